//! Coefficient arithmetic: prime fields, their degree-n extensions and the
//! rationals used for logarithm/exponential expansions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not an odd prime; the computations assume p > 2")]
    NotOddPrime(u32),
    #[error("extension degree {0} is not supported (1 <= n <= 4)")]
    BadDegree(u32),
    #[error("field parameters differ: {0} vs {1}")]
    Mismatch(String, String),
    #[error("modulus polynomial {0:?} is not irreducible over F_{1}")]
    Reducible(Vec<u32>, u32),
    #[error("supplied action is not p-semilinear: {0}")]
    NotSemilinear(String),
    #[error("cannot parse coefficient {0:?}")]
    Parse(String),
}

/// A commutative coefficient ring. Elements are plain values; the ring
/// object carries the parameters.
pub trait CoeffRing: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn to_text(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    /// 0 for the rationals.
    fn characteristic(&self) -> u32;
    /// a^(p^i); the identity in characteristic 0.
    fn frobenius(&self, a: &Self::Elem, i: u32) -> Self::Elem;
    fn params(&self) -> FieldParams;
}

pub trait Field: CoeffRing {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, lowest coefficient first. Empty for prime fields.
    pub modulus: Vec<u32>,
    pub conway: bool,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_odd_prime(p: u32) -> Result<(), FieldError> {
    if p == 2 || !is_prime(p) {
        return Err(FieldError::NotOddPrime(p));
    }
    Ok(())
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        check_odd_prime(p)?;
        Ok(PrimeField { p })
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow_mod(a as u64, e, self.p as u64) as u32
    }
}

impl CoeffRing for PrimeField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn to_text(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let v: i64 = s.trim().parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        Ok(self.reduce(v))
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn frobenius(&self, a: &u32, _i: u32) -> u32 {
        *a
    }
    fn params(&self) -> FieldParams {
        FieldParams { p: self.p, n: 1, modulus: vec![], conway: true }
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
}

/// Degree-2 Conway polynomials x^2 + a x + b, stored as [b, a, 1].
fn conway_quadratic(p: u32) -> Option<[u32; 3]> {
    let (b, a) = match p {
        3 => (2, 2),
        5 => (2, 4),
        7 => (3, 6),
        11 => (2, 7),
        13 => (2, 12),
        17 => (3, 16),
        19 => (2, 18),
        23 => (5, 21),
        _ => return None,
    };
    Some([b, a, 1])
}

const TABLE_LIMIT: u32 = 1024;

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

/// F_{p^n}, elements encoded as integers sum c_i p^i where c_i is the
/// coefficient of x^i in the power basis of the modulus.
#[derive(Clone)]
pub struct ExtField {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    conway: bool,
    tables: Option<Arc<Tables>>,
}

impl Debug for ExtField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.n, self.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.n == o.n && self.modulus == o.modulus
    }
}
impl Eq for ExtField {}

impl ExtField {
    /// F_{p^2} with the Conway modulus when tabulated, otherwise the first
    /// primitive monic quadratic in lexicographic order.
    pub fn quadratic(p: u32) -> Result<Self, FieldError> {
        check_odd_prime(p)?;
        if let Some(m) = conway_quadratic(p) {
            return Self::with_modulus(p, m.to_vec(), true);
        }
        for a in 0..p {
            for b in 1..p {
                let f = Self::with_modulus(p, vec![b, a, 1], false);
                if let Ok(f) = f {
                    if f.is_primitive_generator() {
                        return Ok(f);
                    }
                }
            }
        }
        Err(FieldError::Reducible(vec![], p))
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>, conway: bool) -> Result<Self, FieldError> {
        check_odd_prime(p)?;
        let n = modulus.len() as u32 - 1;
        if !(1..=4).contains(&n) || *modulus.last().unwrap() != 1 {
            return Err(FieldError::BadDegree(n));
        }
        let q = p.checked_pow(n).filter(|q| *q < (1 << 24)).ok_or(FieldError::BadDegree(n))?;
        let mut f = ExtField { p, n, q, modulus, conway, tables: None };
        if !f.modulus_irreducible() {
            return Err(FieldError::Reducible(f.modulus.clone(), p));
        }
        if q <= TABLE_LIMIT {
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    mul[(a * q + b) as usize] = f.mul_slow(a, b);
                }
            }
            let mut inv = vec![0u32; q as usize];
            for a in 1..q {
                inv[a as usize] = (1..q).find(|b| mul[(a * q + b) as usize] == 1).unwrap();
            }
            let frob = (0..q).map(|a| f.pow_slow(a, p as u64)).collect();
            f.tables = Some(Arc::new(Tables { mul, inv, frob }));
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut a = a;
        for _ in 0..self.n {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// The generator x of the power basis.
    pub fn gen(&self) -> u32 {
        if self.n == 1 {
            // degree one: x = -m_0
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }

    /// Embedding of F_p.
    pub fn embed(&self, c: u32) -> u32 {
        c % self.p
    }

    /// Some element ω with ω^{p-1} = -1, i.e. ω^p = -ω. Used for descent
    /// of anti-invariant classes.
    pub fn anti_fixed_unit(&self) -> u32 {
        (1..self.q)
            .find(|&w| self.frobenius(&w, 1) == self.neg(&w))
            .expect("n even")
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..n].iter().map(|&x| x as u32).collect();
        self.from_digits(&d)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn modulus_irreducible(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        // no roots suffices for n <= 3; for n = 4 also check quadratic factors
        // by testing x^(p^k) = x mod f only at k = n and gcd-free k | n via order
        let x = self.p;
        let mut y = x;
        for k in 1..=self.n {
            y = self.pow_slow(y, self.p as u64);
            if y == x && k < self.n {
                return false;
            }
        }
        if y != x {
            return false;
        }
        // remaining case: products of irreducibles of degree d | n with
        // x^(p^n) = x; rule out by root/quadratic search
        for a in 0..self.p {
            let mut v = 0u64;
            for c in self.modulus.iter().rev() {
                v = (v * a as u64 + *c as u64) % self.p as u64;
            }
            if v == 0 {
                return false;
            }
        }
        true
    }

    fn is_primitive_generator(&self) -> bool {
        let g = self.gen();
        let order = (self.q - 1) as u64;
        let mut m = order;
        let mut d = 2u64;
        let mut primes = vec![];
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        primes.iter().all(|&l| self.pow_slow(g, order / l) != 1)
    }
}

impl CoeffRing for ExtField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (*a, *b);
        let mut r = 0;
        let mut place = 1;
        for _ in 0..self.n {
            r += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        r
    }
    fn neg(&self, a: &u32) -> u32 {
        let mut a = *a;
        let mut r = 0;
        let mut place = 1;
        for _ in 0..self.n {
            r += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        r
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize],
            None => self.mul_slow(*a, *b),
        }
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    /// Power-basis digits joined with ':' (lowest first); plain integers for
    /// prime-field elements.
    fn to_text(&self, a: &u32) -> String {
        if *a < self.p {
            return a.to_string();
        }
        self.digits(*a).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(":")
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() == 1 {
            let v: i64 = parts[0].parse().map_err(|_| err())?;
            return Ok(self.from_i64(v));
        }
        if parts.len() != self.n as usize {
            return Err(err());
        }
        let mut d = vec![];
        for part in parts {
            let v: i64 = part.parse().map_err(|_| err())?;
            d.push(v.rem_euclid(self.p as i64) as u32);
        }
        Ok(self.from_digits(&d))
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn frobenius(&self, a: &u32, i: u32) -> u32 {
        let mut r = *a;
        for _ in 0..(i % self.n) {
            r = match &self.tables {
                Some(t) => t.frob[r as usize],
                None => self.pow_slow(r, self.p as u64),
            };
        }
        r
    }
    fn params(&self) -> FieldParams {
        FieldParams { p: self.p, n: self.n, modulus: self.modulus.clone(), conway: self.conway }
    }
}

impl Field for ExtField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => t.inv[*a as usize],
            None => self.pow_slow(*a, self.q as u64 - 2),
        })
    }
}

/// Exact rationals, for logarithm and exponential series before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_text(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        s.trim().parse().map_err(|_| FieldError::Parse(s.to_string()))
    }
    fn characteristic(&self) -> u32 {
        0
    }
    fn frobenius(&self, a: &BigRational, _i: u32) -> BigRational {
        a.clone()
    }
    fn params(&self) -> FieldParams {
        FieldParams { p: 0, n: 1, modulus: vec![], conway: false }
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Reduce a p-integral rational mod p; `None` when p divides the denominator.
pub fn reduce_rational(a: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let den = a.denom().abs();
    if (&den % &pb).is_zero() {
        return None;
    }
    let num = (a.numer() % &pb + &pb) % &pb;
    let den = (den % &pb).to_u64()?;
    let num = num.to_u64()?;
    let sign = if a.denom().is_negative() { p as u64 - 1 } else { 1 };
    let inv = pow_mod(den, p as u64 - 2, p as u64);
    Some((num * inv % p as u64 * sign % p as u64) as u32)
}

/// p-adic valuation of a nonzero rational.
pub fn p_adic_valuation(a: &BigRational, p: u32) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut c = 0i64;
        while (&x % &pb).is_zero() {
            x /= &pb;
            c += 1;
        }
        c
    };
    Some(count(a.numer()) - count(a.denom()))
}

/// Element of F_p carrying its prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u32,
    p: u32,
}

impl PrimeFieldElem {
    pub fn new(value: i64, p: u32) -> Result<Self, FieldError> {
        check_odd_prime(p)?;
        Ok(PrimeFieldElem { value: value.rem_euclid(p as i64) as u32, p })
    }
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn p(&self) -> u32 {
        self.p
    }
}

/// Element of an extension field carrying its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtFieldElem {
    pub field: ExtField,
    pub value: u32,
}

impl ExtFieldElem {
    pub fn new(field: &ExtField, coeffs: &[PrimeFieldElem]) -> Result<Self, FieldError> {
        if coeffs.len() != field.n as usize || coeffs.iter().any(|c| c.p != field.p) {
            return Err(FieldError::Mismatch(format!("{:?}", field), format!("{:?}", coeffs)));
        }
        let d: Vec<u32> = coeffs.iter().map(|c| c.value).collect();
        Ok(ExtFieldElem { field: field.clone(), value: field.from_digits(&d) })
    }
    pub fn coeffs(&self) -> Vec<PrimeFieldElem> {
        self.field.digits(self.value).into_iter().map(|v| PrimeFieldElem { value: v, p: self.field.p }).collect()
    }
}

pub fn ext_mul(a: &ExtFieldElem, b: &ExtFieldElem) -> Result<ExtFieldElem, FieldError> {
    if a.field != b.field {
        return Err(FieldError::Mismatch(format!("{:?}", a.field), format!("{:?}", b.field)));
    }
    Ok(ExtFieldElem { field: a.field.clone(), value: a.field.mul(&a.value, &b.value) })
}

pub fn frobenius(a: &ExtFieldElem, i: u32) -> ExtFieldElem {
    ExtFieldElem { field: a.field.clone(), value: a.field.frobenius(&a.value, i) }
}

/// F_p-basis of the fixed points of a p-semilinear map on the F_q-span of
/// `vectors` (rows in F_q^N). `action` maps a coordinate vector to its
/// image. Semilinearity is checked on the spanning vectors and on random
/// scalar combinations before use.
pub fn galois_fixed_subspace<A>(field: &ExtField, vectors: &[Vec<u32>], action: A) -> Result<Vec<Vec<u32>>, FieldError>
where
    A: Fn(&[u32]) -> Vec<u32>,
{
    if vectors.is_empty() {
        return Ok(vec![]);
    }
    let dim = vectors[0].len();
    let n = field.n() as usize;
    let basis = crate::linalg::row_basis(field, vectors);
    if basis.is_empty() {
        return Ok(vec![]);
    }
    // semilinearity probe: σ(λv + w) = λ^p σ(v) + σ(w)
    let mut seed = 0x9e37_79b9_u64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed % field.order() as u64) as u32
    };
    for v in &basis {
        for w in &basis {
            let lam = next();
            let comb: Vec<u32> = v.iter().zip(w).map(|(a, b)| field.add(&field.mul(&lam, a), b)).collect();
            let lhs = action(&comb);
            let sv = action(v);
            let sw = action(w);
            let lp = field.frobenius(&lam, 1);
            if lhs.len() != dim || sv.len() != dim {
                return Err(FieldError::NotSemilinear("image has the wrong length".into()));
            }
            let rhs: Vec<u32> = sv.iter().zip(&sw).map(|(a, b)| field.add(&field.mul(&lp, a), b)).collect();
            if lhs != rhs {
                return Err(FieldError::NotSemilinear(format!("λ = {}", field.to_text(&lam))));
            }
        }
    }
    // F_p-basis of the span: ω^k b_i, unknowns a_{ik} in F_p.
    let mut gens: Vec<Vec<u32>> = vec![];
    let mut w = 1u32;
    for _ in 0..n {
        for b in &basis {
            gens.push(b.iter().map(|c| field.mul(&w, c)).collect());
        }
        w = field.mul(&w, &field.gen());
    }
    let fp = PrimeField::new(field.p())?;
    // column j of the F_p-linear map gens_j ↦ σ(gens_j) - gens_j,
    // every F_q coordinate expanded into n F_p digits
    let images: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let s = action(g);
            s.iter().zip(g).flat_map(|(a, b)| field.digits(field.sub(a, b))).collect()
        })
        .collect();
    let rows = dim * n;
    let cols = gens.len();
    let mut m = vec![vec![0u32; cols]; rows];
    for (j, img) in images.iter().enumerate() {
        for (i, v) in img.iter().enumerate() {
            m[i][j] = *v;
        }
    }
    let kernel = crate::linalg::kernel(&fp, &m, cols);
    Ok(kernel
        .into_iter()
        .map(|coef| {
            let mut v = vec![0u32; dim];
            for (j, a) in coef.iter().enumerate() {
                if *a != 0 {
                    for (x, g) in v.iter_mut().zip(&gens[j]) {
                        *x = field.add(x, &field.mul(&field.embed(*a), g));
                    }
                }
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two() {
        assert_eq!(PrimeField::new(2), Err(FieldError::NotOddPrime(2)));
        assert!(ExtField::quadratic(9).is_err());
    }

    #[test]
    fn conway_modulus_for_three() {
        let f = ExtField::quadratic(3).unwrap();
        assert_eq!(f.modulus(), &[2, 2, 1]);
        let w = f.gen();
        // ω² = -2ω - 2 = ω + 1
        assert_eq!(f.mul(&w, &w), f.add(&w, &1));
    }

    #[test]
    fn rational_reduction() {
        let a = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(reduce_rational(&a, 3), Some(1));
        let b = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(reduce_rational(&b, 3), None);
        assert_eq!(p_adic_valuation(&b, 3), Some(-1));
    }
}
