//! Exact Euler-characteristic invariants.
//!
//! `chi_orb = Σ_T (-1)^|T| / |W_T|` over spherical `T` (including `∅`), and
//! the Charney–Davis quantity `κ(L) = Σ_σ (-1/2)^|σ|` over the simplices of
//! `L` together with the empty simplex, which contributes `1`. With this
//! convention `chi_orb = κ(L)` for right-angled systems, and the sign
//! prediction for a flag homology `(2k-1)`-sphere is `(-1)^k κ ≥ 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coxeter::CoxeterSystem;
use crate::nerve::Nerve;
use crate::simplicial::SimplicialComplex;

pub const KAPPA_CONVENTION: &str =
    "kappa = sum over simplices s of L and the empty simplex of (-1/2)^|s|; the empty simplex contributes 1";

/// An exact rational, serialized as `{"num": .., "den": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn big_int<S: Serializer>(
    st: &mut S::SerializeStruct,
    key: &'static str,
    v: &BigInt,
) -> Result<(), S::Error> {
    match v.to_i64() {
        Some(x) => st.serialize_field(key, &x),
        None => st.serialize_field(key, &v.to_string()),
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        big_int::<S>(&mut st, "num", self.0.numer())?;
        big_int::<S>(&mut st, "den", self.0.denom())?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVerdict {
    /// Odd dimension: no sign is predicted.
    NotApplicable,
    Holds,
    Violated,
}

/// `(-1)^{n/2} x ≥ 0` for even `n`.
pub fn sign_prediction(x: &Rational, n: usize) -> SignVerdict {
    if n % 2 == 1 {
        return SignVerdict::NotApplicable;
    }
    let signed = if (n / 2).is_multiple_of(2) { x.0.clone() } else { -x.0.clone() };
    if signed.is_negative() {
        SignVerdict::Violated
    } else {
        SignVerdict::Holds
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerReport {
    pub chi_orb: Rational,
    pub kappa: Rational,
    /// `dim L + 1`, the dimension of the Davis complex.
    pub dimension: usize,
    pub right_angled: bool,
    /// Equal exactly for right-angled systems.
    pub chi_orb_equals_kappa: bool,
    /// Made only when the nerve is a homology sphere.
    pub sign: SignVerdict,
    pub convention: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharneyDavisReport {
    pub kappa: Rational,
    pub f_vector: Vec<usize>,
    pub flag: bool,
    /// `L` is a homology sphere of its own dimension.
    pub homology_sphere: bool,
    /// Sign prediction, made only when `L` is a flag homology sphere of odd
    /// dimension.
    pub sign: SignVerdict,
    pub convention: &'static str,
}

pub fn chi_orb(nerve: &Nerve) -> Rational {
    let mut sum = BigRational::zero();
    for t in &nerve.spherical {
        let term = BigRational::new(BigInt::one(), BigInt::from(t.order.clone()));
        if t.subset.len() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Rational(sum)
}

/// `κ` from the face numbers of `L`.
pub fn kappa_of_f_vector(f: &[usize]) -> Rational {
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let mut power = BigRational::one();
    let mut sum = BigRational::one();
    for &count in f {
        power *= half.clone();
        sum += power.clone() * BigRational::from_integer(BigInt::from(count));
    }
    Rational(sum)
}

pub fn charney_davis(l: &SimplicialComplex) -> CharneyDavisReport {
    let f = l.f_vector();
    let kappa = kappa_of_f_vector(&f);
    let flag = l.is_flag();
    let d = l.dim();
    let homology_sphere = l.is_homology_sphere(d).pass();
    let sign = if flag && homology_sphere && d >= 0 {
        sign_prediction(&kappa, d as usize + 1)
    } else {
        SignVerdict::NotApplicable
    };
    CharneyDavisReport {
        kappa,
        f_vector: f,
        flag,
        homology_sphere,
        sign,
        convention: KAPPA_CONVENTION,
    }
}

pub fn euler_of_complex(k: &SimplicialComplex) -> i64 {
    k.euler_characteristic()
}

pub fn euler_report(w: &CoxeterSystem, nerve: &Nerve) -> EulerReport {
    let chi = chi_orb(nerve);
    let kappa = kappa_of_f_vector(&nerve.complex.f_vector());
    let dimension = (nerve.complex.dim() + 1).max(0) as usize;
    // predicted only when the Davis complex is a manifold without boundary
    let sign = if nerve.complex.is_homology_sphere(nerve.complex.dim()).pass() {
        sign_prediction(&chi, dimension)
    } else {
        SignVerdict::NotApplicable
    };
    EulerReport {
        chi_orb_equals_kappa: chi == kappa,
        sign,
        chi_orb: chi,
        kappa,
        dimension,
        right_angled: w.is_right_angled(),
        convention: KAPPA_CONVENTION,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;

    fn triangle(p: u32, q: u32, r: u32) -> CoxeterSystem {
        CoxeterSystem::from_fn(vec!["a".into(), "b".into(), "c".into()], |i, j| {
            match (i.min(j), i.max(j)) {
                (0, 1) => Order::Finite(p),
                (1, 2) => Order::Finite(q),
                _ => Order::Finite(r),
            }
        })
        .unwrap()
    }

    fn right_angled_cycle(n: usize) -> CoxeterSystem {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        CoxeterSystem::right_angled(names, &edges).unwrap()
    }

    #[test]
    fn triangle_group_237() {
        let w = triangle(2, 3, 7);
        let n = w.build_nerve().unwrap();
        assert_eq!(chi_orb(&n), Rational::new(-1, 84));
        assert_eq!(euler_report(&w, &n).sign, SignVerdict::Holds);
    }

    #[test]
    fn right_angled_cycles() {
        for (k, num, den) in [(4, 0, 1), (5, -1, 4), (6, -1, 2)] {
            let w = right_angled_cycle(k);
            let n = w.build_nerve().unwrap();
            let r = euler_report(&w, &n);
            assert_eq!(r.chi_orb, Rational::new(num, den));
            assert!(r.chi_orb_equals_kappa);
        }
    }

    #[test]
    fn finite_group_chamber_count() {
        // |W| chi_orb = χ(K) = 1 for a finite group, whose Davis complex is a
        // cone over the Coxeter complex
        let w = triangle(2, 3, 3);
        let n = w.build_nerve().unwrap();
        let chi = chi_orb(&n);
        assert_eq!(chi.0 * BigRational::from_integer(24.into()), BigRational::one());
        assert_eq!(euler_report(&w, &n).sign, SignVerdict::NotApplicable);
    }

    #[test]
    fn charney_davis_examples() {
        let c4 = SimplicialComplex::cycle(4, "a").unwrap();
        let c4b = SimplicialComplex::cycle(4, "b").unwrap();
        let c5 = SimplicialComplex::cycle(5, "a").unwrap();
        let c5b = SimplicialComplex::cycle(5, "b").unwrap();
        let r = charney_davis(&c4.join(&c4b).unwrap());
        assert_eq!(r.kappa, Rational::new(0, 1));
        assert_eq!(r.f_vector, vec![8, 24, 32, 16]);
        assert!(r.flag && r.homology_sphere);
        assert_eq!(r.sign, SignVerdict::Holds);
        let r = charney_davis(&c5.join(&c5b).unwrap());
        assert_eq!(r.kappa, Rational::new(1, 16));
        let r = charney_davis(&c5);
        assert_eq!(r.kappa, Rational::new(-1, 4));
        assert_eq!(r.sign, SignVerdict::Holds);
        let tri = SimplicialComplex::simplex_boundary(&["x", "y", "z"]).unwrap();
        let r = charney_davis(&tri);
        assert!(!r.flag);
        assert_eq!(r.sign, SignVerdict::NotApplicable);
    }

    #[test]
    fn euler_of_small_complexes() {
        assert_eq!(euler_of_complex(&SimplicialComplex::simplex(&["p"]).unwrap()), 1);
        assert_eq!(euler_of_complex(&SimplicialComplex::cycle(5, "v").unwrap()), 0);
        let oct = SimplicialComplex::simplex_boundary(&["a", "b"])
            .unwrap()
            .join(&SimplicialComplex::simplex_boundary(&["c", "d"]).unwrap())
            .unwrap()
            .join(&SimplicialComplex::simplex_boundary(&["e", "f"]).unwrap())
            .unwrap();
        assert_eq!(euler_of_complex(&oct), 2);
    }

    #[test]
    fn rationals_serialize_as_pairs() {
        let json = serde_json::to_string(&Rational::new(-1, 4)).unwrap();
        assert_eq!(json, r#"{"num":-1,"den":4}"#);
    }
}
