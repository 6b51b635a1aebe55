//! The first periodic Bernoulli function, Stickelberger elements over the
//! unit group (Z/n)*, Dirichlet characters with exact values in cyclotomic
//! fields, the generalized Bernoulli numbers B_{1,chi}, and the zero-sum
//! pairing engine.
//!
//! Cyclotomic values are kept as rational coefficient vectors modulo the
//! cyclotomic polynomial, so nonvanishing checks are exact decisions.

use std::collections::BTreeMap;
use std::fmt;

use num::{Integer, One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{Int, IntMatrix, Rational};

#[derive(Debug, Error)]
pub enum CharsumError {
    #[error("weight {value} at index {index} is not coprime to {n}")]
    NotCoprime { index: usize, value: Int, n: Int },
    #[error("modulus must be at least {min}, got {n}")]
    ModulusTooSmall { n: u64, min: u64 },
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(Int),
    #[error("enumeration cost {cost} exceeds budget {budget}")]
    ResourceLimit { cost: u128, budget: u64 },
}

/// First periodic Bernoulli function: {x} - 1/2 off the integers, 0 on them.
pub fn b1(x: &Rational) -> Rational {
    let frac = x - x.floor();
    if frac.is_zero() {
        Rational::zero()
    } else {
        frac - Rational::new(Int::one(), Int::from(2))
    }
}

/// Element of the rational group algebra of (Z/n)*, indexed by the units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraVector {
    n: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl GroupAlgebraVector {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeff(&self, g: u64) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }
}

/// Residues coprime to n, ascending. The trivial modulus keeps its single
/// residue class.
pub fn units_of(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

/// Stickelberger element S(x) = sum over g of B1(g x) sigma_g.
/// The argument must satisfy n*x integral; x is read modulo Z.
pub fn stickelberger(x: &Rational, n: u64) -> GroupAlgebraVector {
    assert!(n >= 1);
    let nn = Rational::from_integer(Int::from(n));
    assert!((x * &nn).is_integer(), "n*x must be integral");
    let coeffs = units_of(n)
        .into_iter()
        .map(|g| (g, b1(&(x * Rational::from_integer(Int::from(g))))))
        .collect();
    GroupAlgebraVector { n, coeffs }
}

/// Exact rank over Q of the span of { S(k/n) : k = 0..n-1 }.
pub fn stickelberger_rank(n: u64) -> usize {
    assert!(n >= 3, "rank statement needs n >= 3");
    let units = units_of(n);
    // scale by 2n: the (k, g) entry becomes 2(kg mod n) - n, or 0
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            units
                .iter()
                .map(|&g| {
                    let r = (k as u128 * g as u128 % n as u128) as u64;
                    if r == 0 {
                        0
                    } else {
                        2 * r as i64 - n as i64
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_i64_rows(&rows).rank()
}

/// Verifies that the vectors u_g* = sigma_g* + sigma_{-g}* annihilate every
/// Stickelberger element, have rank phi(n)/2, and complement rank U.
pub fn u_perp_basis_check(n: u64) -> bool {
    assert!(n >= 3);
    let units = units_of(n);
    let phi = units.len();
    for k in 0..n {
        let s = stickelberger(&Rational::new(Int::from(k), Int::from(n)), n);
        for &g in &units {
            if !(s.coeff(g) + s.coeff(n - g)).is_zero() {
                return false;
            }
        }
    }
    let index: BTreeMap<u64, usize> = units.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let rows: Vec<Vec<i64>> = units
        .iter()
        .filter(|&&g| g < n - g)
        .map(|&g| {
            let mut row = vec![0i64; phi];
            row[index[&g]] = 1;
            row[index[&(n - g)]] = 1;
            row
        })
        .collect();
    let rank_perp = IntMatrix::from_i64_rows(&rows).rank();
    rank_perp == phi / 2 && stickelberger_rank(n) + rank_perp == phi
}

// ---------------------------------------------------------------------
// cyclotomic numbers

/// Element of Q(zeta_m), stored in the power basis modulo the m-th
/// cyclotomic polynomial. Zero tests are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

/// Coefficients of the m-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_poly(m: u64) -> Vec<Int> {
    assert!(m >= 1);
    let mut phis: BTreeMap<u64, Vec<Int>> = BTreeMap::new();
    let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    divisors.sort_unstable();
    for &d in &divisors {
        // x^d - 1 divided by the product of Phi_e over proper divisors e
        let mut num = vec![Int::zero(); d as usize + 1];
        num[0] = -Int::one();
        num[d as usize] = Int::one();
        for (&e, phi_e) in phis.iter() {
            if e < d && d % e == 0 {
                num = poly_div_exact(&num, phi_e);
            }
        }
        phis.insert(d, num);
    }
    phis.remove(&m).unwrap()
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![Int::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let v = &rem[i - dd + j] - &c * &den[j];
            rem[i - dd + j] = v;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        let deg = cyclotomic_poly(order).len() - 1;
        CyclotomicNumber {
            order,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    /// zeta_order^k, reduced.
    pub fn root_power(order: u64, k: u64) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let k = (k % order) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        CyclotomicNumber {
            order,
            coeffs: reduce_mod(raw, &phi, deg),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let deg = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = &raw[i + j] + a * b;
                raw[i + j] = v;
            }
        }
        let phi = cyclotomic_poly(self.order);
        CyclotomicNumber {
            order: self.order,
            coeffs: reduce_mod(raw, &phi, deg),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo
    /// the (irreducible) cyclotomic polynomial. Panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let phi: Vec<Rational> = cyclotomic_poly(self.order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        // invariant: r_i = s_i * self (mod Phi)
        let mut r0 = phi.clone();
        let mut s0 = vec![Rational::zero()];
        let mut r1 = trim(self.coeffs.clone());
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = rem;
            s1 = s2;
        }
        assert_eq!(r0.len(), 1, "cyclotomic polynomial is irreducible over Q");
        let c = r0[0].recip();
        let deg = self.coeffs.len();
        let mut inv: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        inv.resize(deg.max(inv.len()), Rational::zero());
        CyclotomicNumber {
            order: self.order,
            coeffs: reduce_mod(inv, &cyclotomic_poly(self.order), deg),
        }
    }

    /// Embeds into Q(zeta_m) for self.order | m via zeta_order = zeta_m^(m/order).
    pub fn promote(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "target order must be a multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        CyclotomicNumber {
            order: m,
            coeffs: reduce_mod(raw, &phi, deg),
        }
    }
}

fn reduce_mod(mut raw: Vec<Rational>, phi: &[Int], deg: usize) -> Vec<Rational> {
    for i in (deg..raw.len()).rev() {
        let c = std::mem::replace(&mut raw[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().take(deg).enumerate() {
            if pj.is_zero() {
                continue;
            }
            let v = &raw[i - deg + j] - &c * Rational::from_integer(pj.clone());
            raw[i - deg + j] = v;
        }
    }
    raw.truncate(deg);
    raw.resize(deg, Rational::zero());
    raw
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for i in (b.len() - 1..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - (b.len() - 1)] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let v = &rem[i - (b.len() - 1) + j] - &c * bj;
            rem[i - (b.len() - 1) + j] = v;
        }
    }
    (quot, trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let v = &out[i + j] + ai * bj;
            out[i + j] = v;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let av = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let bv = b.get(i).cloned().unwrap_or_else(Rational::zero);
        *o = av - bv;
    }
    trim(out)
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_negative() {
                format!("({c})")
            } else {
                c.to_string()
            };
            let term = match i {
                0 => coeff,
                1 => format!("{coeff}*z{}", self.order),
                _ => format!("{coeff}*z{}^{i}", self.order),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

// ---------------------------------------------------------------------
// Dirichlet characters

/// A Dirichlet character mod n: a character of (Z/n)* extended to Z by its
/// primitive character at the conductor (zero off the units of f).
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    /// Exponent tuple with respect to the cyclic generator decomposition.
    exponents: Vec<u64>,
    order: u64,
    conductor: u64,
    odd: bool,
    /// unit u -> e with chi(u) = zeta_order^e
    values: BTreeMap<u64, u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Exponent e with chi(k) = zeta_order^e, or None when gcd(k, f) != 1
    /// (where the Dirichlet extension vanishes).
    pub fn eval_exponent(&self, k: i64) -> Option<u64> {
        let f = self.conductor;
        let r = k.rem_euclid(f as i64) as u64;
        if f > 1 && r.gcd(&f) != 1 {
            return None;
        }
        // lift to a residue mod n coprime to n; one exists in every
        // unit class of the conductor
        let n = self.modulus;
        let mut cand = r;
        loop {
            let unit = if n == 1 { 0 } else { cand % n };
            if self.values.contains_key(&unit) {
                return Some(self.values[&unit]);
            }
            cand += f;
            assert!(cand < n + f + f, "unit lift must exist");
        }
    }

    /// chi(k) as an exact cyclotomic number of order `order()`.
    pub fn eval(&self, k: i64) -> CyclotomicNumber {
        match self.eval_exponent(k) {
            None => CyclotomicNumber::zero(self.order),
            Some(e) => CyclotomicNumber::root_power(self.order, e),
        }
    }
}

/// Cyclic decomposition of (Z/n)* from the prime factorization: primitive
/// roots for odd prime powers, the <-1, 5> structure for powers of two.
struct UnitGroup {
    orders: Vec<u64>,
    exponent: u64,
    units: Vec<u64>,
    dlog: BTreeMap<u64, Vec<u64>>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    'next: for g in 2..p {
        for (q, _) in &factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

/// Generators (lifted mod n by CRT) and their orders for each prime-power
/// component of n.
fn unit_group_generators(n: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        let rest = n / pe;
        let lift = |g: u64| -> u64 {
            if rest == 1 {
                return g % n;
            }
            // x = g mod pe, x = 1 mod rest
            let mut x = g % pe;
            while x % rest != 1 % rest {
                x += pe;
            }
            x % n
        };
        if p == 2 {
            match e {
                1 => {}
                2 => gens.push((lift(3), 2)),
                _ => {
                    gens.push((lift(pe - 1), 2));
                    gens.push((lift(5), pe / 4));
                }
            }
        } else {
            let mut g = primitive_root_mod_prime(p);
            if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
                g += p;
            }
            let order = pe / p * (p - 1);
            gens.push((lift(g), order));
        }
    }
    gens
}

impl UnitGroup {
    fn new(n: u64) -> UnitGroup {
        assert!(n >= 1);
        let units = units_of(n);
        let gens = unit_group_generators(n);
        let generators: Vec<u64> = gens.iter().map(|&(g, _)| g).collect();
        let orders: Vec<u64> = gens.iter().map(|&(_, m)| m).collect();
        let exponent = orders.iter().fold(1u64, |a, &b| a.lcm(&b));
        // discrete logs by enumerating all exponent tuples
        let mut dlog = BTreeMap::new();
        let k = generators.len();
        let mut x = vec![0u64; k];
        loop {
            let mut u: u64 = 1 % n;
            for (g, &e) in generators.iter().zip(&x) {
                u = (u as u128 * pow_mod(*g, e, n) as u128 % n as u128) as u64;
            }
            dlog.entry(u).or_insert_with(|| x.clone());
            let mut l = k;
            let done = loop {
                if l == 0 {
                    break true;
                }
                l -= 1;
                x[l] += 1;
                if x[l] < orders[l] {
                    break false;
                }
                x[l] = 0;
            };
            if done {
                break;
            }
        }
        assert_eq!(dlog.len(), units.len(), "decomposition covers the units");
        UnitGroup {
            orders,
            exponent,
            units,
            dlog,
        }
    }
}

/// All phi(n) Dirichlet characters mod n, each annotated with its order,
/// conductor and parity. For n >= 3 exactly half of them are odd.
pub fn characters(n: u64) -> Vec<DirichletCharacter> {
    assert!(n >= 1);
    let ug = UnitGroup::new(n);
    let m_big = ug.exponent;
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut out = Vec::new();
    let k = ug.orders.len();
    let mut t = vec![0u64; k];
    loop {
        // value exponents at scale M = group exponent
        let mut vals_big: BTreeMap<u64, u64> = BTreeMap::new();
        for &u in &ug.units {
            let x = &ug.dlog[&u];
            let mut e: u64 = 0;
            for j in 0..k {
                let scale = m_big / ug.orders[j];
                let term = t[j] as u128 * x[j] as u128 % m_big as u128;
                e = ((e as u128 + term * scale as u128) % m_big as u128) as u64;
            }
            vals_big.insert(u, e);
        }
        let g = vals_big
            .values()
            .fold(m_big, |acc, &v| if v == 0 { acc } else { acc.gcd(&v) });
        let order = m_big / g;
        let values: BTreeMap<u64, u64> = vals_big
            .iter()
            .map(|(&u, &v)| (u, v / (m_big / order)))
            .collect();
        let conductor = *divisors
            .iter()
            .find(|&&f| ug.units.iter().all(|&u| u % f != 1 % f || values[&u] == 0))
            .expect("n itself is always admissible");
        let odd = n >= 3 && values[&(n - 1)] != 0;
        out.push(DirichletCharacter {
            modulus: n,
            exponents: t.clone(),
            order,
            conductor,
            odd,
            values,
        });
        let mut l = k;
        let done = loop {
            if l == 0 {
                break true;
            }
            l -= 1;
            t[l] += 1;
            if t[l] < ug.orders[l] {
                break false;
            }
            t[l] = 0;
        };
        if done {
            break;
        }
    }
    out
}

/// Generalized Bernoulli number B_{1,chi} = sum over k of chi(k) B1(k/f),
/// exact in Q(zeta_order).
pub fn b1_chi(chi: &DirichletCharacter) -> CyclotomicNumber {
    let m = chi.order();
    let f = chi.conductor();
    let mut acc = CyclotomicNumber::zero(m);
    for k in 1..=f {
        let Some(e) = chi.eval_exponent(k as i64) else {
            continue;
        };
        let b = b1(&Rational::new(Int::from(k), Int::from(f)));
        if b.is_zero() {
            continue;
        }
        acc = acc.add(&CyclotomicNumber::root_power(m, e).scale(&b));
    }
    acc
}

/// Forms u_chi = sum over k of chi(k) S(k/f_chi) for every odd character
/// and confirms the set is linearly independent over the common cyclotomic
/// field, giving rank U >= phi(n)/2.
pub fn u_chi_in_span_check(n: u64) -> bool {
    assert!(n >= 3);
    let units = units_of(n);
    let chars = characters(n);
    let odd: Vec<&DirichletCharacter> = chars.iter().filter(|c| c.is_odd()).collect();
    if odd.is_empty() {
        return false;
    }
    let m_embed = odd.iter().fold(1u64, |a, c| a.lcm(&c.order()));
    let rows: Vec<Vec<CyclotomicNumber>> = odd
        .iter()
        .map(|chi| {
            let f = chi.conductor();
            units
                .iter()
                .map(|&g| {
                    let mut acc = CyclotomicNumber::zero(m_embed);
                    for k in 1..=f {
                        let Some(e) = chi.eval_exponent(k as i64) else {
                            continue;
                        };
                        let b = b1(&Rational::new(
                            Int::from(k as u128 * g as u128),
                            Int::from(f),
                        ));
                        if b.is_zero() {
                            continue;
                        }
                        let z = CyclotomicNumber::root_power(chi.order(), e).promote(m_embed);
                        acc = acc.add(&z.scale(&b));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    cyclotomic_rank(rows) == odd.len()
}

/// Rank over Q(zeta) by Gaussian elimination with exact field inverses.
fn cyclotomic_rank(mut rows: Vec<Vec<CyclotomicNumber>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, rank);
        let inv = rows[rank][c].inverse();
        for j in c..cols {
            rows[rank][j] = rows[rank][j].mul(&inv);
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..cols {
                let v = rows[i][j].sub(&factor.mul(&rows[rank][j]));
                rows[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------
// pairing engine

/// Witness that the weights pair off into negation classes: each pair of
/// indices (i, j) satisfies a_i + a_j = 0 mod n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCertificate {
    pub n: Int,
    /// Index pairs, lexicographically smallest by sorted index pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl PairingCertificate {
    /// The reordering sigma as a flat index list (pairs flattened).
    pub fn permutation(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    pub fn verify(&self, a: &[Int]) -> bool {
        let mut seen = vec![false; a.len()];
        if self.pairs.len() * 2 != a.len() {
            return false;
        }
        for &(i, j) in &self.pairs {
            if i >= a.len() || j >= a.len() || seen[i] || seen[j] {
                return false;
            }
            seen[i] = true;
            seen[j] = true;
            if !(&a[i] + &a[j]).mod_floor(&self.n).is_zero() {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingOutcome {
    Paired(PairingCertificate),
    /// The zero-sum hypothesis fails at the witness t.
    NotZeroSum {
        t: Int,
        sum: Rational,
    },
    /// Hypothesis holds but no pairing exists. For n >= 3 this contradicts
    /// the evenness statement and signals a bug; it does occur for n <= 2
    /// with an odd number of weights.
    NoPairing,
}

/// Greedy matching on negation classes: pairs each index with the smallest
/// later index holding the negated residue. Complete whenever a perfect
/// matching exists, and returns the lexicographically smallest pairing.
pub(crate) fn pair_by_negation(res: &[Int], n: &Int) -> Option<Vec<(usize, usize)>> {
    let mut used = vec![false; res.len()];
    let mut pairs = Vec::with_capacity(res.len() / 2);
    for i in 0..res.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = (-&res[i]).mod_floor(n);
        let j = (i + 1..res.len()).find(|&j| !used[j] && res[j] == target)?;
        used[j] = true;
        pairs.push((i, j));
    }
    Some(pairs)
}

/// Checks the zero-sum hypothesis sum of B1(t a_i / n) = 0 for all t, then
/// pairs the weights into negation classes.
pub fn find_pairing(a: &[Int], n: &Int) -> Result<PairingOutcome, CharsumError> {
    if !n.is_positive() {
        return Err(CharsumError::NonPositiveModulus(n.clone()));
    }
    let res: Vec<Int> = a.iter().map(|x| x.mod_floor(n)).collect();
    for (index, r) in res.iter().enumerate() {
        if !r.gcd(n).is_one() {
            return Err(CharsumError::NotCoprime {
                index,
                value: a[index].clone(),
                n: n.clone(),
            });
        }
    }
    // scaled hypothesis: sum of (2 (t a_i mod n) - n) over nonvanishing terms
    let two_n = Int::from(2) * n;
    let mut t = Int::zero();
    while &t < n {
        let mut sum = Int::zero();
        for r in &res {
            let m = (&t * r).mod_floor(n);
            if !m.is_zero() {
                sum += Int::from(2) * m - n;
            }
        }
        if !sum.is_zero() {
            return Ok(PairingOutcome::NotZeroSum {
                t,
                sum: Rational::new(sum, two_n),
            });
        }
        t += 1;
    }
    match pair_by_negation(&res, n) {
        Some(pairs) => Ok(PairingOutcome::Paired(PairingCertificate {
            n: n.clone(),
            pairs,
        })),
        None => Ok(PairingOutcome::NoPairing),
    }
}

/// Exhaustive check of the zero-sum statement for tuples of units mod n.
#[derive(Clone, Debug)]
pub struct Prop15Report {
    pub n: u64,
    pub d: usize,
    pub multisets: u64,
    pub hypothesis_satisfying: u64,
    pub paired: u64,
    pub violations: Vec<String>,
}

/// Iterates all d-tuples of units mod n up to order. Every tuple satisfying
/// the zero-sum hypothesis must pair off; for odd d no tuple may satisfy
/// the hypothesis at all.
pub fn verify_prop15(n: u64, d: usize, budget: u64) -> Result<Prop15Report, CharsumError> {
    if n < 3 {
        return Err(CharsumError::ModulusTooSmall { n, min: 3 });
    }
    let units = units_of(n);
    let cost = (d as u128) * (units.len() as u128).pow(d as u32);
    if cost > budget as u128 {
        return Err(CharsumError::ResourceLimit { cost, budget });
    }
    let mut report = Prop15Report {
        n,
        d,
        multisets: 0,
        hypothesis_satisfying: 0,
        paired: 0,
        violations: Vec::new(),
    };
    let mut idx = vec![0usize; d];
    loop {
        report.multisets += 1;
        let vals: Vec<u64> = idx.iter().map(|&i| units[i]).collect();
        if zero_sum_hypothesis(n, &vals) {
            report.hypothesis_satisfying += 1;
            let tuple = format!(
                "{n}: {}",
                vals.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            if d % 2 == 1 {
                report
                    .violations
                    .push(format!("odd d tuple satisfies hypothesis: {tuple}"));
            }
            let ints: Vec<Int> = vals.iter().map(|&v| Int::from(v)).collect();
            match pair_by_negation(&ints, &Int::from(n)) {
                Some(pairs) => {
                    report.paired += 1;
                    let cert = PairingCertificate {
                        n: Int::from(n),
                        pairs,
                    };
                    if !cert.verify(&ints) {
                        report.violations.push(format!("bad certificate: {tuple}"));
                    }
                }
                None => {
                    if d % 2 == 0 {
                        report
                            .violations
                            .push(format!("hypothesis holds but no pairing: {tuple}"));
                    }
                }
            }
        }
        // next non-decreasing index tuple
        let mut p = d;
        let done = loop {
            if p == 0 {
                break true;
            }
            p -= 1;
            if idx[p] + 1 < units.len() {
                let v = idx[p] + 1;
                for q in idx.iter_mut().skip(p) {
                    *q = v;
                }
                break false;
            }
        };
        if done {
            break;
        }
    }
    Ok(report)
}

fn zero_sum_hypothesis(n: u64, vals: &[u64]) -> bool {
    for t in 1..n {
        let mut sum: i64 = 0;
        for &a in vals {
            let m = (t as u128 * a as u128 % n as u128) as u64;
            if m != 0 {
                sum += 2 * m as i64 - n as i64;
            }
        }
        if sum != 0 {
            return false;
        }
    }
    true
}
