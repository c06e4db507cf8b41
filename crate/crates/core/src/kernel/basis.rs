use std::fmt;

/// Label of a basis vector in one of the countable bases we work with.
///
/// Tensor bases nest `Pair` to the left: `a⊗b⊗c` is `Pair(Pair(a, b), c)`.
/// Only the left spine is ever flattened, so non-tensor indices must not be
/// built from `Pair`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisIndex {
    /// Basis of the ground field `k`.
    Unit,
    /// Group-like basis element `c_p`; also labels elements of finite groups.
    GroupLike(i64),
    /// Ordered monomial `v^k n^a n̄^b`.
    Monomial {
        k: i64,
        a: u32,
        b: u32,
    },
    /// Word over the generators of a presentation, before normalization.
    Word(Vec<u8>),
    Pair(Box<BasisIndex>, Box<BasisIndex>),
}

impl BasisIndex {
    pub fn pair(a: BasisIndex, b: BasisIndex) -> Self {
        BasisIndex::Pair(Box::new(a), Box::new(b))
    }

    pub fn mono(k: i64, a: u32, b: u32) -> Self {
        BasisIndex::Monomial { k, a, b }
    }

    /// Left-associated tensor of the given legs. A single leg is returned as is.
    pub fn tensor<I: IntoIterator<Item = BasisIndex>>(legs: I) -> Self {
        let mut it = legs.into_iter();
        let first = it.next().expect("tensor of zero legs");
        it.fold(first, BasisIndex::pair)
    }

    /// Splits the left spine of nested pairs into its legs.
    pub fn flatten(&self) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        let mut cur = self;
        let mut rights = Vec::new();
        while let BasisIndex::Pair(l, r) = cur {
            rights.push((**r).clone());
            cur = l;
        }
        out.push(cur.clone());
        out.extend(rights.into_iter().rev());
        out
    }

    /// Rebuilds the canonical left-nested form of an arbitrarily nested tensor.
    pub fn normalize_tensor(&self) -> Self {
        fn walk(i: &BasisIndex, out: &mut Vec<BasisIndex>) {
            match i {
                BasisIndex::Pair(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                other => out.push(other.clone()),
            }
        }
        let mut legs = Vec::new();
        walk(self, &mut legs);
        BasisIndex::tensor(legs)
    }

    pub fn split(&self) -> Option<(&BasisIndex, &BasisIndex)> {
        match self {
            BasisIndex::Pair(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_group_like(&self) -> Option<i64> {
        match self {
            BasisIndex::GroupLike(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_unit_monomial(&self) -> bool {
        matches!(self, BasisIndex::Monomial { k: 0, a: 0, b: 0 } | BasisIndex::Unit)
    }
}

fn pow_str(name: &str, e: u64, out: &mut Vec<String>) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        e => out.push(format!("{name}^{e}")),
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Unit => write!(f, "1"),
            BasisIndex::GroupLike(p) => write!(f, "c_{p}"),
            BasisIndex::Monomial { k, a, b } => {
                let mut parts = Vec::new();
                pow_str(if *k < 0 { "vi" } else { "v" }, k.unsigned_abs(), &mut parts);
                pow_str("n", *a as u64, &mut parts);
                pow_str("nb", *b as u64, &mut parts);
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join("*"))
                }
            }
            BasisIndex::Word(w) => {
                if w.is_empty() {
                    return write!(f, "1");
                }
                let s: Vec<String> = w.iter().map(|g| format!("x{g}")).collect();
                write!(f, "{}", s.join("*"))
            }
            BasisIndex::Pair(l, r) => write!(f, "{l} # {r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisIndex::GroupLike as G;

    #[test]
    fn flatten_left_spine() {
        let t = BasisIndex::tensor([G(1), G(2), G(3)]);
        assert_eq!(t.flatten(), vec![G(1), G(2), G(3)]);
        let right = BasisIndex::pair(G(1), BasisIndex::pair(G(2), G(3)));
        assert_eq!(right.normalize_tensor(), t);
    }

    #[test]
    fn monomial_display() {
        assert_eq!(BasisIndex::mono(-2, 1, 3).to_string(), "vi^2*n*nb^3");
        assert_eq!(BasisIndex::mono(0, 0, 0).to_string(), "1");
        assert_eq!(BasisIndex::pair(BasisIndex::mono(1, 0, 0), G(-1)).to_string(), "v # c_-1");
    }
}
