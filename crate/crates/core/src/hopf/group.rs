use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on group order for subgroup enumeration.
pub const SUBGROUP_ORDER_BOUND: usize = 24;

/// A finite group given by its multiplication table over indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validate a multiplication table: `table[s][t]` is the index of `st`.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_names(table, None)
    }

    pub fn with_names(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (s, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {s} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} in row {s} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|s| table[e][s] == s && table[s][e] == s))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for s in 0..n {
            let inv = (0..n)
                .find(|&t| table[s][t] == identity && table[t][s] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("no inverse for {s}")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let names = match names {
            Some(v) if v.len() != n => {
                return Err(Error::Dimension(format!("{} element names for a group of order {n}", v.len())))
            }
            Some(v) => v,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Self { table, identity, inverse, names })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).expect("cyclic group")
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(g: &Self, h: &Self) -> Self {
        let (m, n) = (g.order(), h.order());
        let table =
            (0..m * n).map(|a| (0..m * n).map(|b| g.mul(a / n, b / n) * n + h.mul(a % n, b % n)).collect()).collect();
        let names = (0..m * n).map(|a| format!("({},{})", g.names[a / n], h.names[a % n])).collect();
        Self::with_names(table, Some(names)).expect("product of groups")
    }

    /// Symmetric group on `n` points; permutations in lexicographic order, identity first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        // (στ)(i) = σ(τ(i))
        let table =
            perms.iter().map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect())).collect()).collect();
        let names = perms.iter().map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")).collect();
        Self::with_names(table, Some(names)).expect("symmetric group")
    }

    /// Dihedral group of order `2n`: `r^k` at index `k`, `s r^k` at index `n + k`.
    pub fn dihedral(n: usize) -> Self {
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (fa, ka) = (a / n, a % n);
                        let (fb, kb) = (b / n, b % n);
                        // s^fa r^ka s^fb r^kb = s^(fa+fb) r^(±ka + kb)
                        let k = if fb == 1 { (n - ka + kb) % n } else { (ka + kb) % n };
                        ((fa + fb) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        Self::new(table).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inverse[s]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Smallest subgroup containing `gens`, as a sorted list of elements.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order() && set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// All subgroups, sorted by order then elements; refuses orders above `bound`.
    pub fn subgroups(&self, bound: usize) -> Result<Vec<Vec<usize>>> {
        if self.order() > bound {
            return Err(Error::Unsupported(format!(
                "subgroup enumeration is limited to order {bound}, group has order {}",
                self.order()
            )));
        }
        let trivial = vec![self.identity];
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in 0..self.order() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// The subgroup as a group in its own right, with elements relabelled in sorted order.
    pub fn subgroup_group(&self, elements: &[usize]) -> Result<Self> {
        if !self.is_subgroup(elements) {
            return Err(Error::NotAGroup(format!("{elements:?} is not a subgroup")));
        }
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).expect("closed");
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        Self::with_names(table, Some(names))
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_missing_inverse() {
        let err = FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "not a group: no inverse for 1");
    }

    #[test]
    fn rejects_non_associative() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::new(t).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn subgroup_counts() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(z2.subgroups(24).unwrap(), vec![vec![0], vec![0, 1]]);
        let v4 = FiniteGroup::direct_product(&z2, &z2);
        assert_eq!(v4.subgroups(24).unwrap().len(), 5);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.subgroups(24).unwrap().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).subgroups(24).unwrap().len(), 10);
        assert_eq!(FiniteGroup::symmetric(4).subgroups(24).unwrap().len(), 30);
    }

    #[test]
    fn order_bound_is_enforced() {
        let z5 = FiniteGroup::cyclic(5);
        assert!(matches!(z5.subgroups(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn symmetric_three_is_non_abelian() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.identity(), 0);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert_eq!(FiniteGroup::dihedral(3).order(), 6);
    }
}
