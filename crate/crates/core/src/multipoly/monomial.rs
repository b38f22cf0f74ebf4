use smallvec::SmallVec;

/// Exponent vector over a ring's variables.
///
/// The derived `Ord` is plain lexicographic comparison of exponent vectors
/// and only serves as a canonical storage order; term orders live in
/// [`MonomialOrder`](super::MonomialOrder).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn var(arity: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(arity);
        m.0[i] = e;
        m
    }

    pub fn from_slice(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Sum of exponents over the given variable indices.
    pub fn partial_deg(&self, vars: impl IntoIterator<Item = usize>) -> u32 {
        vars.into_iter().map(|i| self.0[i]).sum()
    }
}
