use std::collections::VecDeque;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::algebra::{AlgElement, MatAlg, StarAut};
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerance};

/// An action of a finite group on a [`MatAlg`] by *-automorphisms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ActionJson", into = "ActionJson")]
pub struct GroupAction {
    group: FiniteGroup,
    algebra: MatAlg,
    auts: Vec<StarAut>,
}

#[derive(Serialize, Deserialize)]
struct ActionJson {
    group: FiniteGroup,
    algebra: MatAlg,
    auts: IndexMap<String, StarAut>,
}

impl TryFrom<ActionJson> for GroupAction {
    type Error = Error;
    fn try_from(j: ActionJson) -> Result<Self> {
        let n = j.group.order();
        let mut auts = Vec::with_capacity(n);
        for g in 0..n {
            let a = j
                .auts
                .get(&g.to_string())
                .or_else(|| j.auts.get(j.group.label(g)))
                .ok_or_else(|| Error::InvalidAction(format!("no automorphism for element {g}")))?;
            auts.push(a.clone());
        }
        GroupAction::new(j.group, j.algebra, auts, &Tolerance::default())
    }
}

impl From<GroupAction> for ActionJson {
    fn from(a: GroupAction) -> Self {
        ActionJson {
            auts: a.auts.into_iter().enumerate().map(|(g, x)| (g.to_string(), x)).collect(),
            group: a.group,
            algebra: a.algebra,
        }
    }
}

impl GroupAction {
    /// Validates every automorphism, `α_e = id` and `α_g∘α_h = α_{gh}` on induced maps.
    pub fn new(group: FiniteGroup, algebra: MatAlg, auts: Vec<StarAut>, tol: &Tolerance) -> Result<Self> {
        if auts.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} automorphisms for a group of order {}", auts.len(), group.order())));
        }
        for a in &auts {
            a.validate(&algebra, tol.abs_eps)?;
        }
        let act = GroupAction { group, algebra, auts };
        act.check_homomorphism(tol.abs_eps)?;
        Ok(act)
    }

    /// Extends automorphisms given on generators to the whole group.
    pub fn from_generators(group: FiniteGroup, algebra: MatAlg, gens: &[(usize, StarAut)], tol: &Tolerance) -> Result<Self> {
        let n = group.order();
        let mut auts: Vec<Option<StarAut>> = vec![None; n];
        auts[group.identity()] = Some(StarAut::identity(&algebra));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, a) in gens {
                let y = group.mul(x, *s);
                if auts[y].is_none() {
                    auts[y] = Some(auts[x].as_ref().unwrap().compose(a));
                    queue.push_back(y);
                }
            }
        }
        let auts = auts
            .into_iter()
            .enumerate()
            .map(|(g, a)| a.ok_or_else(|| Error::InvalidAction(format!("generators do not reach element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, algebra, auts, tol)
    }

    pub fn trivial(group: FiniteGroup, algebra: MatAlg) -> Self {
        let auts = vec![StarAut::identity(&algebra); group.order()];
        GroupAction { group, algebra, auts }
    }

    fn check_homomorphism(&self, tol: f64) -> Result<()> {
        let g = &self.group;
        if !self.auts[g.identity()].same_map(&StarAut::identity(&self.algebra), &self.algebra, tol) {
            return Err(Error::InvalidAction("identity element does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let lhs = self.auts[a].compose(&self.auts[b]);
                if !lhs.same_map(&self.auts[g.mul(a, b)], &self.algebra, tol) {
                    return Err(Error::InvalidAction(format!(
                        "α_{}∘α_{} differs from α_{}",
                        g.label(a),
                        g.label(b),
                        g.label(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &MatAlg {
        &self.algebra
    }

    pub fn aut(&self, g: usize) -> &StarAut {
        &self.auts[g]
    }

    pub fn auts(&self) -> &[StarAut] {
        &self.auts
    }

    pub fn apply(&self, g: usize, x: &AlgElement) -> AlgElement {
        self.auts[g].apply(x)
    }

    /// Restriction to a subgroup, re-indexed as in [`Subgroup::as_group`].
    pub fn restrict(&self, h: &Subgroup) -> GroupAction {
        let (hg, emb) = h.as_group();
        GroupAction { group: hg, algebra: self.algebra.clone(), auts: emb.iter().map(|&g| self.auts[g].clone()).collect() }
    }

    /// Restriction to the cyclic subgroup generated by `g`, indexed by powers of `g`
    /// (element `k` of the result is `g^k`).
    pub fn restrict_cyclic(&self, g: usize) -> GroupAction {
        let k = self.group.element_order(g);
        let zk = super::group::make_cyclic_group(k);
        let auts = (0..k).map(|i| self.auts[self.group.pow(g, i)].clone()).collect();
        GroupAction { group: zk, algebra: self.algebra.clone(), auts }
    }
}

/// A group action on a labelled generating set of an algebra, by linear maps:
/// `α_g(x_j) = Σ_i M_g[i, j] · x_i`.
///
/// This is what covariant representations need: images of generators under
/// `π∘α_g` are linear combinations of generator images. Actions on a [`MatAlg`]
/// convert to this form on the matrix-unit basis; actions on other algebras
/// (e.g. a free group C*-algebra, where automorphisms permute free unitaries)
/// are given directly.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorAction {
    group: FiniteGroup,
    labels: Vec<String>,
    maps: Vec<CMatrix>,
    algebra_action: Option<GroupAction>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorActionJson {
    group: FiniteGroup,
    labels: Vec<String>,
    maps: IndexMap<String, CMatrix>,
}

impl Serialize for GeneratorAction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeneratorActionJson {
            group: self.group.clone(),
            labels: self.labels.clone(),
            maps: self.maps.iter().enumerate().map(|(g, m)| (g.to_string(), m.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneratorAction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GeneratorActionJson::deserialize(d)?;
        let maps = (0..j.group.order())
            .map(|g| {
                j.maps
                    .get(&g.to_string())
                    .cloned()
                    .ok_or_else(|| serde::de::Error::custom(format!("no map for element {g}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        GeneratorAction::new(j.group, j.labels, maps, &Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

impl GeneratorAction {
    pub fn new(group: FiniteGroup, labels: Vec<String>, maps: Vec<CMatrix>, tol: &Tolerance) -> Result<Self> {
        let l = labels.len();
        if maps.len() != group.order() || maps.iter().any(|m| m.shape() != (l, l)) {
            return Err(Error::InvalidAction(format!("expected {} maps of size {l}x{l}", group.order())));
        }
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|x| seen.insert(x)) {
            return Err(Error::InvalidAction("duplicate generator labels".into()));
        }
        let a = GeneratorAction { group, labels, maps, algebra_action: None };
        a.check_homomorphism(tol.abs_eps)?;
        Ok(a)
    }

    /// Action by permutations of the labels: `α_g(x_j) = x_{perms[g][j]}`.
    pub fn from_label_permutations(group: FiniteGroup, labels: Vec<String>, perms: &[Vec<usize>], tol: &Tolerance) -> Result<Self> {
        let maps = perms.iter().map(|p| CMatrix::permutation(p)).collect();
        GeneratorAction::new(group, labels, maps, tol)
    }

    /// Induced action on the matrix-unit basis of the algebra.
    pub fn from_group_action(action: &GroupAction) -> Self {
        let alg = action.algebra();
        GeneratorAction {
            group: action.group().clone(),
            labels: alg.basis_labels(),
            maps: action.auts().iter().map(|a| a.coeff_matrix(alg)).collect(),
            algebra_action: Some(action.clone()),
        }
    }

    fn check_homomorphism(&self, tol: f64) -> Result<()> {
        let g = &self.group;
        let l = self.labels.len();
        let scale = |m: &CMatrix| tol * (1.0 + m.norm_fro());
        if self.maps[g.identity()].dist(&CMatrix::identity(l)) > scale(&CMatrix::identity(l)) {
            return Err(Error::InvalidAction("identity element does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.maps[a] * &self.maps[b];
                let rhs = &self.maps[g.mul(a, b)];
                if lhs.dist(rhs) > scale(rhs) {
                    return Err(Error::InvalidAction(format!(
                        "α_{}∘α_{} differs from α_{}",
                        g.label(a),
                        g.label(b),
                        g.label(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn map(&self, g: usize) -> &CMatrix {
        &self.maps[g]
    }

    /// The underlying [`GroupAction`] when the algebra is a [`MatAlg`].
    pub fn algebra_action(&self) -> Option<&GroupAction> {
        self.algebra_action.as_ref()
    }

    pub fn restrict(&self, h: &Subgroup) -> GeneratorAction {
        let (hg, emb) = h.as_group();
        GeneratorAction {
            group: hg,
            labels: self.labels.clone(),
            maps: emb.iter().map(|&g| self.maps[g].clone()).collect(),
            algebra_action: self.algebra_action.as_ref().map(|a| a.restrict(h)),
        }
    }

    /// Restriction to `⟨g⟩ ≅ Z_k`, element `i` of the result being `g^i`.
    pub fn restrict_cyclic(&self, g: usize) -> GeneratorAction {
        let k = self.group.element_order(g);
        GeneratorAction {
            group: super::group::make_cyclic_group(k),
            labels: self.labels.clone(),
            maps: (0..k).map(|i| self.maps[self.group.pow(g, i)].clone()).collect(),
            algebra_action: self.algebra_action.as_ref().map(|a| a.restrict_cyclic(g)),
        }
    }
}
