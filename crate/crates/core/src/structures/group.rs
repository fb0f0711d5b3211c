use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;
    fn try_from(j: GroupJson) -> Result<Self> {
        if j.table.len() != j.order {
            return Err(Error::InvalidGroup(format!("order {} but table has {} rows", j.order, j.table.len())));
        }
        let g = FiniteGroup::from_table(j.table, j.labels)?;
        if g.identity != j.identity {
            return Err(Error::InvalidGroup(format!("declared identity {} but table identity is {}", j.identity, g.identity)));
        }
        Ok(g)
    }
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson { order: g.order(), identity: g.identity, labels: Some(g.labels), table: g.table }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table (Latin square, associativity, identity, inverses).
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > 64 {
            return Err(Error::InvalidGroup(format!("order {n} exceeds the supported maximum of 64")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap()).collect();
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(Error::InvalidGroup(format!("{} labels for order {n}", l.len()))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { table, identity, inverse, labels })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True if the group is generated by one element; returns such a generator
    /// (the smallest index with full order).
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements().find(|&g| self.element_order(g) == self.order())
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|x| self.mul(self.mul(x, g), self.inv(x))).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    /// Left regular permutation of `g`: `h ↦ g·h`.
    pub fn left_regular_perm(&self, g: usize) -> Vec<usize> {
        self.elements().map(|h| self.mul(g, h)).collect()
    }

    /// Right translation by `g⁻¹`: `h ↦ h·g⁻¹`. This is also a left action of G.
    pub fn right_regular_perm(&self, g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        self.elements().map(|h| self.mul(h, gi)).collect()
    }

    /// A small generating set: greedily adds the element that enlarges the
    /// generated subgroup, scanning in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = vec![self.identity];
        for g in self.elements() {
            if !cur.contains(&g) {
                gens.push(g);
                cur = subgroup_closure(self, &gens).members;
            }
        }
        gens
    }
}

/// Z_n with table `(i + j) mod n`.
pub fn make_cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(table, None).expect("valid cyclic table")
}

pub const S3_E: usize = 0;
pub const S3_ETA: usize = 1;
pub const S3_ETA2: usize = 2;
pub const S3_TAU: usize = 3;

fn compose3(a: [usize; 3], b: [usize; 3]) -> [usize; 3] {
    [a[b[0]], a[b[1]], a[b[2]]]
}

/// The elements of [`make_symmetric_group_3`] as permutations of {0,1,2}, in index order.
pub fn s3_permutations() -> [[usize; 3]; 6] {
    let eta = [1, 2, 0];
    let tau = [1, 0, 2];
    let eta2 = compose3(eta, eta);
    [[0, 1, 2], eta, eta2, tau, compose3(eta, tau), compose3(eta2, tau)]
}

/// S₃ as permutations of {0,1,2}: η = (0 1 2) (i ↦ i+1), τ swaps 0 and 1.
/// Element k < 3 is η^k, element 3 + k is η^k·τ; the product is composition.
pub fn make_symmetric_group_3() -> FiniteGroup {
    let compose = compose3;
    let elems = s3_permutations();
    let idx = |p: [usize; 3]| elems.iter().position(|&q| q == p).unwrap();
    let table = (0..6).map(|i| (0..6).map(|j| idx(compose(elems[i], elems[j]))).collect()).collect();
    let labels = ["e", "η", "η²", "τ", "ητ", "η²τ"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table(table, Some(labels)).expect("valid S3 table")
}

/// A subgroup, stored as the sorted member list of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
    #[serde(skip)]
    parent: Option<FiniteGroup>,
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteGroup {
        self.parent.as_ref().expect("subgroup parent")
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { members: g.elements().collect(), parent: Some(g.clone()) }
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent();
        g.elements().all(|x| self.members.iter().all(|&h| self.contains(g.mul(g.mul(x, h), g.inv(x)))))
    }

    /// The subgroup as a standalone group (members relabelled `0..|H|` in sorted
    /// order) together with the embedding into the parent.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let g = self.parent();
        let pos = |x: usize| self.members.binary_search(&x).unwrap();
        let table = self.members.iter().map(|&a| self.members.iter().map(|&b| pos(g.mul(a, b))).collect()).collect();
        let labels = self.members.iter().map(|&a| g.label(a).to_string()).collect();
        (FiniteGroup::from_table(table, Some(labels)).expect("subgroup table"), self.members.clone())
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup { members: g.elements().filter(|&x| inside[x]).collect(), parent: Some(g.clone()) }
}

/// Representatives of the right cosets `H·g`: the identity first, then the
/// smallest element of each remaining coset in increasing order.
pub fn right_coset_reps(h: &Subgroup) -> Vec<usize> {
    let g = h.parent();
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    let order = std::iter::once(g.identity()).chain(g.elements().filter(|&x| x != g.identity()));
    for x in order {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in &h.members {
            covered[g.mul(m, x)] = true;
        }
    }
    reps
}

/// Index of the right coset `H·x` among `reps`.
pub fn coset_index(h: &Subgroup, reps: &[usize], x: usize) -> usize {
    let g = h.parent();
    reps.iter()
        .position(|&r| h.contains(g.mul(x, g.inv(r))))
        .expect("reps tile the group")
}
