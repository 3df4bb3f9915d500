//! Reference computations taken directly from the definitions, quantifying
//! over every element, family or subset. Deliberately naive and independent
//! of the library's kernel-level shortcuts.
#![allow(dead_code)]

pub type M = u64;

pub fn full(n: usize) -> M {
    if n >= 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

pub fn has(m: M, i: usize) -> bool {
    m >> i & 1 == 1
}

pub fn ones(m: M) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| has(m, i))
}

/// Sort key for clan supports: size, then the ascending index list.
pub fn support_key(m: &M) -> (u32, Vec<usize>) {
    (m.count_ones(), ones(*m).collect())
}

/// A binary relation on all `2^n` elements of a finite Boolean algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rel {
    pub n: usize,
    c: Vec<bool>,
}

impl Rel {
    pub fn from_fn(n: usize, f: impl Fn(M, M) -> bool) -> Self {
        let size = 1usize << n;
        let mut c = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                c[a * size + b] = f(a as M, b as M);
            }
        }
        Rel { n, c }
    }

    /// `a C b` iff some atom of `a` is related to some atom of `b`.
    pub fn from_kernel(n: usize, rows: &[M]) -> Self {
        Rel::from_fn(n, |a, b| ones(a).any(|p| rows[p] & b != 0))
    }

    pub fn get(&self, a: M, b: M) -> bool {
        self.c[(a as usize) << self.n | b as usize]
    }

    pub fn top(&self) -> M {
        full(self.n)
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<M> {
        0..=self.top()
    }

    pub fn sharp(&self) -> Rel {
        Rel::from_fn(self.n, |a, b| {
            self.get(a, b) || self.get(b, a) || a & b != 0
        })
    }

    pub fn ll(&self, a: M, b: M) -> bool {
        !self.get(a, self.top() & !b)
    }

    /// Restriction to atoms.
    pub fn kernel(&self) -> Vec<M> {
        (0..self.n)
            .map(|p| {
                (0..self.n)
                    .filter(|&q| self.get(1 << p, 1 << q))
                    .fold(0, |m, q| m | 1 << q)
            })
            .collect()
    }

    pub fn c0(&self) -> bool {
        self.elements().all(|b| !self.get(0, b) && !self.get(b, 0))
    }

    pub fn c_plus(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements().all(|c| {
                    self.get(a, b | c) == (self.get(a, b) || self.get(a, c))
                        && self.get(a | b, c) == (self.get(a, c) || self.get(b, c))
                })
            })
        })
    }

    pub fn is_precontact(&self) -> bool {
        self.c0() && self.c_plus()
    }

    pub fn cref(&self) -> bool {
        self.elements().filter(|&a| a != 0).all(|a| self.get(a, a))
    }

    pub fn csym(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn ctr(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|c| !self.ll(a, c) || self.elements().any(|b| self.ll(a, b) && self.ll(b, c)))
        })
    }

    pub fn ccon(&self) -> bool {
        let top = self.top();
        self.elements()
            .filter(|&a| a != 0 && a != top)
            .all(|a| self.get(a, top & !a) || self.get(top & !a, a))
    }
}

/// A relation `≪` on all elements, given as a predicate table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ll {
    pub n: usize,
    pub t: Vec<bool>,
}

impl Ll {
    pub fn of(rel: &Rel) -> Ll {
        let r = Rel::from_fn(rel.n, |a, b| rel.ll(a, b));
        Ll { n: rel.n, t: r.c }
    }

    pub fn get(&self, a: M, b: M) -> bool {
        self.t[(a as usize) << self.n | b as usize]
    }

    pub fn pairs(&self) -> Vec<(M, M)> {
        let top = full(self.n);
        (0..=top)
            .flat_map(|a| (0..=top).map(move |b| (a, b)))
            .filter(|&(a, b)| self.get(a, b))
            .collect()
    }

    /// `a C b` iff not `a ≪ b*`.
    pub fn induced(&self) -> Rel {
        let top = full(self.n);
        Rel::from_fn(self.n, |a, b| !self.get(a, top & !b))
    }

    /// `(≪2), (≪2′), (≪3), (≪4), (≪4′)`.
    pub fn precontact_axioms(&self) -> bool {
        let top = full(self.n);
        let e = || 0..=top;
        let leq = |a: M, b: M| a & !b == 0;
        self.get(0, 0)
            && self.get(top, top)
            && e().all(|a| {
                e().all(|b| {
                    e().all(|c| {
                        let l3 = !(self.get(b, c) && leq(a, b)) || self.get(a, c);
                        let r3 = !self.get(a, b) || !leq(b, c) || self.get(a, c);
                        let l4 = !(self.get(a, b) && self.get(a, c)) || self.get(a, b & c);
                        let l4p = !(self.get(a, c) && self.get(b, c)) || self.get(a | b, c);
                        l3 && r3 && l4 && l4p
                    })
                })
            })
    }
}

/// Families of elements as bitsets over the `2^n` elements (`n ≤ 6`).
pub mod fam {
    use super::{full, has, M};

    pub fn contains(f: M, a: M) -> bool {
        has(f, a as usize)
    }

    pub fn elements(n: usize) -> std::ops::RangeInclusive<M> {
        0..=full(n)
    }

    pub fn upward(n: usize, f: M) -> bool {
        elements(n).all(|a| !contains(f, a) || elements(n).all(|b| a & !b != 0 || contains(f, b)))
    }

    pub fn join_prime(n: usize, f: M) -> bool {
        elements(n)
            .all(|a| elements(n).all(|b| !contains(f, a | b) || contains(f, a) || contains(f, b)))
    }

    pub fn meet_closed(n: usize, f: M) -> bool {
        elements(n)
            .all(|a| elements(n).all(|b| !(contains(f, a) && contains(f, b)) || contains(f, a & b)))
    }

    pub fn is_filter(n: usize, f: M) -> bool {
        contains(f, full(n)) && !contains(f, 0) && upward(n, f) && meet_closed(n, f)
    }

    pub fn is_grill(n: usize, f: M) -> bool {
        f != 0 && !contains(f, 0) && upward(n, f) && join_prime(n, f)
    }

    pub fn is_ultrafilter(n: usize, f: M) -> bool {
        is_filter(n, f) && elements(n).all(|a| contains(f, a) != contains(f, full(n) & !a))
    }

    pub fn is_clan(rel: &super::Rel, f: M) -> bool {
        let n = rel.n;
        let sharp = |a: M, b: M| rel.get(a, b) || rel.get(b, a) || a & b != 0;
        is_grill(n, f)
            && elements(n)
                .all(|a| !contains(f, a) || elements(n).all(|b| !contains(f, b) || sharp(a, b)))
    }

    /// All families of the algebra with `n` atoms; only for `n ≤ 4`.
    pub fn all(n: usize) -> impl Iterator<Item = M> {
        assert!(n <= 4, "family enumeration is doubly exponential");
        0..=full(1 << n)
    }

    /// The family `{a : a ∩ support ≠ ∅}`.
    pub fn of_support(n: usize, support: M) -> M {
        elements(n)
            .filter(|&a| a & support != 0)
            .fold(0, |m, a| m | 1 << a)
    }

    /// Atoms that are members.
    pub fn support(n: usize, f: M) -> M {
        (0..n)
            .filter(|&p| contains(f, 1 << p))
            .fold(0, |m, p| m | 1 << p)
    }
}

/// Clans of `(B, C)`. Up to three atoms by testing every family against the
/// definition; beyond that by testing every nonempty atom set for pairwise
/// `C#` and then confirming the generated family is a clan.
pub fn clans(rel: &Rel) -> Vec<M> {
    let n = rel.n;
    let mut out: Vec<M> = if n <= 3 {
        fam::all(n).filter(|&f| fam::is_clan(rel, f)).collect()
    } else {
        let sharp = rel.sharp();
        (1..=full(n))
            .filter(|&s| ones(s).all(|p| ones(s).all(|q| sharp.get(1 << p, 1 << q))))
            .map(|s| fam::of_support(n, s))
            .inspect(|&f| assert!(fam::is_clan(rel, f), "generated family is not a clan"))
            .collect()
    };
    out.sort_by_key(|&f| support_key(&fam::support(n, f)));
    out
}

/// A finite space on points `0..len`, by point closures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Space {
    pub closure: Vec<M>,
}

impl Space {
    pub fn len(&self) -> usize {
        self.closure.len()
    }

    pub fn full(&self) -> M {
        full(self.len())
    }

    pub fn cl(&self, set: M) -> M {
        ones(set).fold(0, |m, x| m | self.closure[x])
    }

    pub fn int(&self, set: M) -> M {
        self.full() & !self.cl(self.full() & !set)
    }

    /// Connected iff the graph of `x ∈ cl{y}` is connected, ignoring direction.
    pub fn connected(&self) -> bool {
        if self.len() == 0 {
            return true;
        }
        let mut seen: M = 1;
        loop {
            let next = (0..self.len())
                .filter(|&y| {
                    (0..self.len()).any(|x| {
                        has(seen, x) && (has(self.closure[x], y) || has(self.closure[y], x))
                    })
                })
                .fold(seen, |m, y| m | 1 << y);
            if next == seen {
                return seen == self.full();
            }
            seen = next;
        }
    }

    /// Every subset `F` with `cl(int(F)) = F`.
    pub fn regular_closed(&self) -> Vec<M> {
        (0..=self.full())
            .filter(|&f| self.cl(self.int(f)) == f)
            .collect()
    }

    pub fn is_discrete_subspace(&self, y: M) -> bool {
        ones(y).all(|x| self.closure[x] & y == 1 << x)
    }
}

/// The dual triple of `(B, C)` built from clan families: closed base
/// `g(a) = {Γ : a ∈ Γ}`, `X0` the ultrafilters, `Γ R Δ` iff `Γ × Δ ⊆ C`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub n: usize,
    pub clans: Vec<M>,
    pub space: Space,
    pub x0: M,
    pub r: Vec<M>,
}

impl Dual {
    pub fn new(rel: &Rel) -> Dual {
        let n = rel.n;
        let clans = clans(rel);
        let pts = clans.len();
        let g = |a: M| {
            (0..pts)
                .filter(|&i| fam::contains(clans[i], a))
                .fold(0, |m, i| m | 1 << i)
        };
        let closure = (0..pts)
            .map(|x| {
                fam::elements(n)
                    .map(g)
                    .filter(|&ga| has(ga, x))
                    .fold(full(pts), |m, ga| m & ga)
            })
            .collect();
        let x0 = (0..pts)
            .filter(|&i| fam::is_ultrafilter(n, clans[i]))
            .fold(0, |m, i| m | 1 << i);
        let r = (0..pts)
            .map(|x| {
                if !has(x0, x) {
                    return 0;
                }
                ones(x0)
                    .filter(|&y| {
                        fam::elements(n).all(|a| {
                            !fam::contains(clans[x], a)
                                || fam::elements(n)
                                    .all(|b| !fam::contains(clans[y], b) || rel.get(a, b))
                        })
                    })
                    .fold(0, |m, y| m | 1 << y)
            })
            .collect();
        Dual {
            n,
            clans,
            space: Space { closure },
            x0,
            r,
        }
    }

    pub fn g(&self, a: M) -> M {
        (0..self.clans.len())
            .filter(|&i| fam::contains(self.clans[i], a))
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn supports(&self) -> Vec<M> {
        self.clans
            .iter()
            .map(|&f| fam::support(self.n, f))
            .collect()
    }

    /// `RC(X, X0) = {cl(P) : P ⊆ X0}`, with `X0` discrete.
    pub fn rc_pair(&self) -> Vec<M> {
        let mut out: Vec<M> = subsets(self.x0).map(|p| self.space.cl(p)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `F C_(X,X0) G` iff some `x ∈ F ∩ X0`, `y ∈ G ∩ X0` have `x R y`.
    pub fn c_pair(&self, f: M, g: M) -> bool {
        ones(f & self.x0).any(|x| self.r[x] & g != 0)
    }
}

/// All subsets of `m`.
pub fn subsets(m: M) -> impl Iterator<Item = M> {
    let mut next = Some(0);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m {
            None
        } else {
            Some((cur.wrapping_sub(m)) & m)
        };
        Some(cur)
    })
}

/// Every kernel on `n` atoms, as rows.
pub fn all_kernels(n: usize) -> impl Iterator<Item = Vec<M>> {
    (0..1u64 << (n * n)).map(move |code| (0..n).map(|p| code >> (p * n) & full(n)).collect())
}
