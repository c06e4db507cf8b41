//! Finite groups, their group algebras, and algebras given by structure
//! constants on a finite basis.

use std::collections::HashMap;
use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::kernel::{BasisIndex, SampleSpec, Sampler, Vect};

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("group table has the wrong shape".into()));
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(Error::Invalid("element 0 must be the identity".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| table[i][j] == 0)
                .ok_or_else(|| Error::Invalid(format!("element {i} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), labels, table, inv })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_table(format!("Z_{n}"), labels, table).expect("cyclic group")
    }

    /// Direct product; `(a, b)` has index `a·|h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let mut table = vec![vec![0; m * n]; m * n];
        let mut labels = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                labels.push(format!("({},{})", g.labels[a], h.labels[b]));
                for c in 0..m {
                    for d in 0..n {
                        table[a * n + b][c * n + d] = g.mul(a, c) * n + h.mul(b, d);
                    }
                }
            }
        }
        FiniteGroup::from_table(format!("{}x{}", g.name, h.name), labels, table).expect("product group")
    }

    /// Permutations of three points, composed as functions `(στ)(i) = σ(τ(i))`.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms.iter().map(|s| perms.iter().map(|t| idx([s[t[0]], s[t[1]], s[t[2]]])).collect()).collect();
        let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
        FiniteGroup::from_table("S_3", labels, table).expect("S_3")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `h⁻¹ g h`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// An element of largest order, the smallest such index.
    pub fn max_order_element(&self) -> usize {
        self.elements().max_by_key(|&a| (self.element_order(a), std::cmp::Reverse(a))).unwrap_or(0)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

pub fn elem(g: usize) -> BasisIndex {
    BasisIndex::GroupLike(g as i64)
}

pub fn elem_of(i: &BasisIndex, n: usize) -> Result<usize> {
    match i.as_group_like() {
        Some(g) if g >= 0 && (g as usize) < n => Ok(g as usize),
        _ => Err(Error::UndefinedOnBasis { map: "finite group".into(), index: i.clone() }),
    }
}

/// Group algebra `kG` with basis `GroupLike(g)`.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
}

impl GroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        GroupAlgebra { group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl Algebra for GroupAlgebra {
    fn name(&self) -> String {
        format!("k[{}]", self.group.name())
    }

    fn one(&self) -> Vect {
        Vect::basis(elem(0))
    }

    fn mul_basis(&self, a: &BasisIndex, b: &BasisIndex) -> Result<Vect> {
        let n = self.group.order();
        Ok(Vect::basis(elem(self.group.mul(elem_of(a, n)?, elem_of(b, n)?))))
    }

    fn factor(&self, a: &BasisIndex) -> Result<Vec<BasisIndex>> {
        let g = elem_of(a, self.group.order())?;
        Ok(if g == 0 { vec![] } else { vec![a.clone()] })
    }

    fn recognize_unit(&self, a: &Vect) -> Option<Vect> {
        if a.len() != 1 {
            return None;
        }
        let (i, c) = a.iter().next()?;
        let g = elem_of(i, self.group.order()).ok()?;
        Some(Vect::term(c.unit_inverse().ok()?, elem(self.group.inv(g))))
    }

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        Some(self.group.elements().map(elem).collect())
    }

    fn sample_basis(&self, s: &mut Sampler, _spec: &SampleSpec) -> BasisIndex {
        elem(s.index(self.group.order()))
    }
}

/// Finite-dimensional algebra from structure constants. Every basis vector
/// counts as a generator.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    name: String,
    basis: Vec<BasisIndex>,
    one: Vect,
    products: HashMap<(BasisIndex, BasisIndex), Vect>,
}

impl TableAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<BasisIndex>,
        one: Vect,
        products: HashMap<(BasisIndex, BasisIndex), Vect>,
    ) -> Self {
        TableAlgebra { name: name.into(), basis, one, products }
    }
}

impl Algebra for TableAlgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn one(&self) -> Vect {
        self.one.clone()
    }

    fn mul_basis(&self, a: &BasisIndex, b: &BasisIndex) -> Result<Vect> {
        self.products.get(&(a.clone(), b.clone())).cloned().ok_or_else(|| Error::UndefinedOnBasis {
            map: format!("{} product", self.name),
            index: BasisIndex::pair(a.clone(), b.clone()),
        })
    }

    fn factor(&self, a: &BasisIndex) -> Result<Vec<BasisIndex>> {
        Ok(vec![a.clone()])
    }

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        Some(self.basis.clone())
    }

    fn sample_basis(&self, s: &mut Sampler, _spec: &SampleSpec) -> BasisIndex {
        s.choose(&self.basis).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group_of_order_six() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn product_group_indices() {
        let z = FiniteGroup::cyclic(3);
        let p = FiniteGroup::product(&z, &z);
        assert_eq!(p.order(), 9);
        // (1,2)·(2,2) = (0,1)
        assert_eq!(p.mul(1 * 3 + 2, 2 * 3 + 2), 1);
        assert!(p.is_abelian());
    }

    #[test]
    fn group_algebra_units() {
        let a = GroupAlgebra::new(Arc::new(FiniteGroup::s3()));
        let x = Vect::term(crate::kernel::Scalar::int(3), elem(4));
        let inv = a.recognize_unit(&x).unwrap();
        assert_eq!(a.mul(&x, &inv).unwrap(), a.one());
    }
}
