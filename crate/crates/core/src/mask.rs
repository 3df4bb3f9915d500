//! Bitmask helpers. A [`Mask`] is a set of indices below 64: atoms of an
//! algebra, points of a space, or cells of an adjacency space.

pub type Mask = u64;

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full(n: usize) -> Mask {
    debug_assert!(n <= 64);
    if n >= 64 {
        Mask::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn has(m: Mask, i: usize) -> bool {
    m >> i & 1 == 1
}

/// Indices of the set bits, ascending.
pub fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Mask {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

/// Renders `{0,2,3}`.
pub fn fmt_set(m: Mask) -> String {
    let parts: Vec<String> = ones(m).map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Renders a point set through a name table: `{Γ1,Γ3}`.
pub fn fmt_named(m: Mask, names: &[String]) -> String {
    let parts: Vec<&str> = ones(m).map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Canonical ordering of supports: by cardinality, then lexicographically on
/// the ascending index lists.
pub fn support_order(a: Mask, b: Mask) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| ones(a).cmp(ones(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_and_back() {
        let m = 0b1011_0010;
        assert_eq!(ones(m).collect::<Vec<_>>(), vec![1, 4, 5, 7]);
        assert_eq!(from_indices(ones(m)), m);
        assert_eq!(full(0), 0);
        assert_eq!(full(64), u64::MAX);
    }

    #[test]
    fn support_order_is_size_then_lex() {
        let mut v = vec![0b1001, 0b0110, 0b0001, 0b0011, 0b0100];
        v.sort_by(|a, b| support_order(*a, *b));
        assert_eq!(v, vec![0b0001, 0b0100, 0b0011, 0b1001, 0b0110]);
    }
}
