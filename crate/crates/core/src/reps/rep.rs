use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{conjugate, CMatrix, Tolerance};
use crate::structures::{AlgElement, FiniteGroup, GeneratorAction, GroupAction, MatAlg, Subgroup};

/// Images of a labelled generating set of an algebra on `ℂ^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepJson", into = "RepJson")]
pub struct Rep {
    dim: usize,
    generators: IndexMap<String, CMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    dim: usize,
    generators: IndexMap<String, CMatrix>,
}

impl TryFrom<RepJson> for Rep {
    type Error = Error;
    fn try_from(j: RepJson) -> Result<Self> {
        Rep::new(j.dim, j.generators)
    }
}

impl From<Rep> for RepJson {
    fn from(r: Rep) -> Self {
        RepJson { dim: r.dim, generators: r.generators }
    }
}

impl Rep {
    pub fn new(dim: usize, generators: IndexMap<String, CMatrix>) -> Result<Self> {
        for (l, m) in &generators {
            if m.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!("generator {l} is {}x{}, rep has dim {dim}", m.rows(), m.cols())));
            }
        }
        Ok(Rep { dim, generators })
    }

    /// Convenience constructor from `(label, matrix)` pairs; the dimension is read
    /// from the first matrix.
    pub fn from_pairs<S: Into<String>>(pairs: Vec<(S, CMatrix)>) -> Result<Self> {
        let dim = pairs.first().map_or(0, |p| p.1.rows());
        Rep::new(dim, pairs.into_iter().map(|(l, m)| (l.into(), m)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &IndexMap<String, CMatrix> {
        &self.generators
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.keys().cloned().collect()
    }

    pub fn get(&self, label: &str) -> Option<&CMatrix> {
        self.generators.get(label)
    }

    fn map(&self, f: impl Fn(&CMatrix) -> CMatrix, dim: usize) -> Rep {
        Rep { dim, generators: self.generators.iter().map(|(l, m)| (l.clone(), f(m))).collect() }
    }

    /// `x ↦ U·π(x)·U*`.
    pub fn transform(&self, u: &CMatrix) -> Rep {
        self.map(|m| conjugate(u, m), u.rows())
    }

    /// Compression `x ↦ W*·π(x)·W` to the range of an isometry `W`.
    pub fn compress(&self, w: &CMatrix) -> Rep {
        let wa = w.adjoint();
        self.map(|m| &(&wa * m) * w, w.cols())
    }

    /// Direct sum; all summands must share labels.
    pub fn direct_sum(parts: &[Rep]) -> Result<Rep> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        for p in parts {
            same_labels(first, p)?;
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let generators = first
            .generators
            .keys()
            .map(|l| (l.clone(), CMatrix::block_diag(&parts.iter().map(|p| p.generators[l].clone()).collect::<Vec<_>>())))
            .collect();
        Ok(Rep { dim, generators })
    }

    /// `k` copies of `self`.
    pub fn multiple(&self, k: usize) -> Rep {
        Rep::direct_sum(&vec![self.clone(); k]).expect("same labels")
    }

    /// Keeps only the listed labels (in that order).
    pub fn select(&self, labels: &[String]) -> Result<Rep> {
        let generators = labels
            .iter()
            .map(|l| {
                self.generators
                    .get(l)
                    .map(|m| (l.clone(), m.clone()))
                    .ok_or_else(|| Error::LabelMismatch(format!("missing generator {l}")))
            })
            .collect::<Result<_>>()?;
        Ok(Rep { dim: self.dim, generators })
    }

    /// `π∘α_g` for a generator-level action: `x_j ↦ Σ_i M_g[i,j]·π(x_i)`.
    pub fn compose(&self, action: &GeneratorAction, g: usize) -> Result<Rep> {
        let labels = action.labels();
        let mats = labels
            .iter()
            .map(|l| self.generators.get(l).ok_or_else(|| Error::LabelMismatch(format!("rep lacks generator {l} of the action"))))
            .collect::<Result<Vec<_>>>()?;
        if self.generators.len() != labels.len() {
            return Err(Error::LabelMismatch(format!(
                "rep has {} generators, action acts on {}",
                self.generators.len(),
                labels.len()
            )));
        }
        let m = action.map(g);
        let generators = labels
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let img = mats.iter().enumerate().fold(CMatrix::zeros(self.dim, self.dim), |acc, (i, x)| {
                    let c = m.get(i, j);
                    if c.norm() == 0.0 {
                        acc
                    } else {
                        acc + x.scale(c)
                    }
                });
                (l.clone(), img)
            })
            .collect();
        Ok(Rep { dim: self.dim, generators })
    }

    /// The defining representation of a block algebra on the matrix-unit labels.
    pub fn defining(alg: &MatAlg) -> Rep {
        let generators = alg.basis_labels().into_iter().zip(alg.basis()).map(|(l, e)| (l, e.to_matrix())).collect();
        Rep { dim: alg.defining_dim(), generators }
    }

    /// The irreducible `x ↦ x_k` (projection onto block `k`) on the matrix-unit labels.
    pub fn block_projection(alg: &MatAlg, k: usize) -> Rep {
        let generators = alg.basis_labels().into_iter().zip(alg.basis()).map(|(l, e)| (l, e.blocks[k].clone())).collect();
        Rep { dim: alg.block_dims()[k], generators }
    }

    /// `π(x)` for an arbitrary element, by linearity over the matrix-unit labels.
    pub fn eval(&self, alg: &MatAlg, x: &AlgElement) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (l, c) in alg.basis_labels().iter().zip(x.coeffs()) {
            let m = self.generators.get(l).ok_or_else(|| Error::LabelMismatch(format!("rep lacks matrix unit {l}")))?;
            if c.norm() != 0.0 {
                out = out + m.scale(c);
            }
        }
        Ok(out)
    }

    /// Largest generator distance to another rep with the same labels.
    pub fn max_dist(&self, other: &Rep) -> f64 {
        self.generators
            .iter()
            .map(|(l, m)| other.generators.get(l).map_or(f64::INFINITY, |o| if o.shape() == m.shape() { m.dist(o) } else { f64::INFINITY }))
            .fold(0.0, f64::max)
    }

    pub fn max_norm(&self) -> f64 {
        self.generators.values().map(|m| m.norm_fro()).fold(0.0, f64::max)
    }
}

pub(crate) fn same_labels(a: &Rep, b: &Rep) -> Result<()> {
    let ka: std::collections::BTreeSet<&String> = a.generators.keys().collect();
    let kb: std::collections::BTreeSet<&String> = b.generators.keys().collect();
    if ka != kb {
        return Err(Error::LabelMismatch(format!("{:?} vs {:?}", ka, kb)));
    }
    Ok(())
}

/// `(L, R)` constraint pairs for `T·r1(x) = r2(x)·T`, closed under adjoints:
/// an adjoint constraint is added unless it is already implied (both images
/// self-adjoint, or another label carries the adjoint images on both sides).
pub fn star_closed_pairs(r1: &Rep, r2: &Rep, tol: &Tolerance) -> Result<Vec<(CMatrix, CMatrix)>> {
    same_labels(r1, r2)?;
    let labels: Vec<&String> = r1.generators.keys().collect();
    let mut pairs: Vec<(CMatrix, CMatrix)> = labels.iter().map(|l| (r2.generators[*l].clone(), r1.generators[*l].clone())).collect();
    let close = |a: &CMatrix, b: &CMatrix| a.dist(b) <= tol.abs_eps * (1.0 + a.norm_fro());
    let n = pairs.len();
    for k in 0..n {
        let (l, r) = (&pairs[k].0, &pairs[k].1);
        let (la, ra) = (l.adjoint(), r.adjoint());
        let implied = (0..n).any(|j| close(&la, &pairs[j].0) && close(&ra, &pairs[j].1));
        if !implied {
            pairs.push((la, ra));
        }
    }
    Ok(pairs)
}

/// A representation `π` of an algebra together with unitaries `U_g` satisfying
/// `U_g·π(x)·U_g* = π(α_g(x))` and `U_g·U_h = U_{gh}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantRep {
    base: Rep,
    action: GeneratorAction,
    unitaries: Vec<CMatrix>,
}

/// JSON form of a [`CovariantRep`]: `{"dim", "generators", "action", "unitaries": {"g": matrix}}`.
/// The action is either an algebra action (`{"group","algebra","auts"}`) or a
/// generator action (`{"group","labels","maps"}`); unitaries are keyed by
/// element index or label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CovariantRepSpec {
    pub dim: usize,
    pub generators: IndexMap<String, CMatrix>,
    pub action: ActionSpec,
    pub unitaries: IndexMap<String, CMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Algebra(GroupAction),
    Generators(GeneratorAction),
}

impl ActionSpec {
    pub fn into_generator_action(self) -> GeneratorAction {
        match self {
            ActionSpec::Algebra(a) => GeneratorAction::from_group_action(&a),
            ActionSpec::Generators(g) => g,
        }
    }
}

impl CovariantRepSpec {
    /// Validates against `tol` and builds the covariant rep.
    pub fn build(self, tol: &Tolerance) -> Result<CovariantRep> {
        let base = Rep::new(self.dim, self.generators)?;
        let action = self.action.into_generator_action();
        let grp = action.group();
        let unitaries = grp
            .elements()
            .map(|g| {
                self.unitaries
                    .get(&g.to_string())
                    .or_else(|| self.unitaries.get(grp.label(g)))
                    .cloned()
                    .ok_or_else(|| Error::NotCovariant(format!("no unitary for element {g}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CovariantRep::new(base, action, unitaries, tol)
    }
}

impl From<&CovariantRep> for CovariantRepSpec {
    fn from(c: &CovariantRep) -> Self {
        let action = match c.action.algebra_action() {
            Some(a) => ActionSpec::Algebra(a.clone()),
            None => ActionSpec::Generators(c.action.clone()),
        };
        CovariantRepSpec {
            dim: c.dim(),
            generators: c.base.generators.clone(),
            action,
            unitaries: c.unitaries.iter().enumerate().map(|(g, u)| (g.to_string(), u.clone())).collect(),
        }
    }
}

impl Serialize for CovariantRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CovariantRepSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CovariantRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CovariantRepSpec::deserialize(d)?.build(&Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

/// Label prefix for group unitaries when a covariant rep is viewed as a plain rep.
pub const UNITARY_PREFIX: &str = "U:";

impl CovariantRep {
    pub fn new(base: Rep, action: GeneratorAction, unitaries: Vec<CMatrix>, tol: &Tolerance) -> Result<Self> {
        let c = CovariantRep { base, action, unitaries };
        c.validate(tol)?;
        Ok(c)
    }

    /// Unitaries given on generators of the group and extended multiplicatively.
    pub fn from_generators(base: Rep, action: GeneratorAction, gens: &[(usize, CMatrix)], tol: &Tolerance) -> Result<Self> {
        let g = action.group().clone();
        let d = base.dim();
        let mut us: Vec<Option<CMatrix>> = vec![None; g.order()];
        us[g.identity()] = Some(CMatrix::identity(d));
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, u) in gens {
                let y = g.mul(x, *s);
                if us[y].is_none() {
                    us[y] = Some(us[x].as_ref().unwrap() * u);
                    queue.push_back(y);
                }
            }
        }
        let unitaries = us
            .into_iter()
            .enumerate()
            .map(|(k, u)| u.ok_or_else(|| Error::InvalidAction(format!("generators do not reach element {k}"))))
            .collect::<Result<Vec<_>>>()?;
        CovariantRep::new(base, action, unitaries, tol)
    }

    /// Skips validation; for internal constructions that are covariant by design.
    pub(crate) fn new_unchecked(base: Rep, action: GeneratorAction, unitaries: Vec<CMatrix>) -> Self {
        CovariantRep { base, action, unitaries }
    }

    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        let g = self.action.group();
        let d = self.base.dim();
        if self.unitaries.len() != g.order() {
            return Err(Error::NotCovariant(format!("{} unitaries for a group of order {}", self.unitaries.len(), g.order())));
        }
        for (k, u) in self.unitaries.iter().enumerate() {
            if u.shape() != (d, d) {
                return Err(Error::DimensionMismatch(format!("unitary {k} is {}x{}, rep has dim {d}", u.rows(), u.cols())));
            }
            let defect = u.unitarity_defect();
            if defect > tol.abs_eps * (1.0 + d as f64).sqrt() {
                return Err(Error::NotUnitary { defect, tol: tol.abs_eps });
            }
        }
        let slack = |m: &CMatrix| tol.abs_eps * (1.0 + m.norm_fro());
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.unitaries[a] * &self.unitaries[b];
                let rhs = &self.unitaries[g.mul(a, b)];
                if lhs.dist(rhs) > slack(rhs) {
                    return Err(Error::NotCovariant(format!("U_{}·U_{} ≠ U_{}", g.label(a), g.label(b), g.label(g.mul(a, b)))));
                }
            }
        }
        for a in g.elements() {
            let moved = self.base.compose(&self.action, a)?;
            for (l, x) in self.base.generators() {
                let lhs = conjugate(&self.unitaries[a], x);
                let rhs = &moved.generators()[l];
                if lhs.dist(rhs) > slack(rhs) {
                    return Err(Error::NotCovariant(format!(
                        "U_{}·π({l})·U_{}* ≠ π(α_{}({l})) (defect {:.3e})",
                        g.label(a),
                        g.label(a),
                        g.label(a),
                        lhs.dist(rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &Rep {
        &self.base
    }

    pub fn action(&self) -> &GeneratorAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn unitary(&self, g: usize) -> &CMatrix {
        &self.unitaries[g]
    }

    pub fn unitaries(&self) -> &[CMatrix] {
        &self.unitaries
    }

    /// The crossed-product representation as a plain [`Rep`]: algebra generators
    /// followed by `U:g` for every group element.
    pub fn to_rep(&self) -> Rep {
        let mut generators = self.base.generators().clone();
        for (g, u) in self.unitaries.iter().enumerate() {
            generators.insert(format!("{UNITARY_PREFIX}{g}"), u.clone());
        }
        Rep { dim: self.dim(), generators }
    }

    /// Inverse of [`CovariantRep::to_rep`].
    pub fn from_rep(rep: &Rep, action: GeneratorAction, tol: &Tolerance) -> Result<Self> {
        let n = action.group().order();
        let mut gens = IndexMap::new();
        for (l, m) in rep.generators() {
            if !l.starts_with(UNITARY_PREFIX) {
                gens.insert(l.clone(), m.clone());
            }
        }
        let unitaries = (0..n)
            .map(|g| {
                rep.get(&format!("{UNITARY_PREFIX}{g}"))
                    .cloned()
                    .ok_or_else(|| Error::LabelMismatch(format!("missing unitary {UNITARY_PREFIX}{g}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CovariantRep::new(Rep::new(rep.dim(), gens)?, action, unitaries, tol)
    }

    /// Conjugation by a unitary `V`: `π ↦ VπV*`, `U_g ↦ V U_g V*`.
    pub fn transform(&self, v: &CMatrix) -> CovariantRep {
        CovariantRep {
            base: self.base.transform(v),
            action: self.action.clone(),
            unitaries: self.unitaries.iter().map(|u| conjugate(v, u)).collect(),
        }
    }

    pub fn restrict(&self, h: &Subgroup) -> CovariantRep {
        CovariantRep {
            base: self.base.clone(),
            action: self.action.restrict(h),
            unitaries: h.members.iter().map(|&g| self.unitaries[g].clone()).collect(),
        }
    }

    /// Restriction to `⟨g⟩ ≅ Z_k`, element `i` of the result being `g^i`.
    pub fn restrict_cyclic(&self, g: usize) -> CovariantRep {
        let grp = self.group();
        let k = grp.element_order(g);
        CovariantRep {
            base: self.base.clone(),
            action: self.action.restrict_cyclic(g),
            unitaries: (0..k).map(|i| self.unitaries[grp.pow(g, i)].clone()).collect(),
        }
    }
}
