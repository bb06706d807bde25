//! Finite fields `GF(p^e)` as lookup tables.
//!
//! Elements are the integers `0..q`. For `e > 1` the element with index
//! `c_0 + c_1 p + … + c_{e−1} p^{e−1}` is the polynomial `c_0 + c_1 x + …`
//! reduced modulo a fixed monic irreducible polynomial; for prime fields the
//! index is the residue itself.

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1024;

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime(q: u64) -> bool {
    matches!(prime_power(q), Some((_, 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: usize,
    /// Coefficients `(c_0, …, c_{e−1})` of `x^e` in the reduced basis, i.e. the
    /// modulus is `x^e − Σ c_i x^i`. Empty for prime fields.
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::UnsupportedOrder(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let qs = q as usize;
        let modulus = if e == 1 { Vec::new() } else { irreducible(p, e) };
        let digits = |a: usize| -> Vec<u64> {
            let mut a = a as u64;
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let index = |c: &[u64]| -> u16 { c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u16 };
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = index(&sum);
                mul[a * qs + b] = index(&poly_mul_mod(&da, &db, &modulus, p));
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as u16;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or_else(|| Error::UnsupportedOrder(format!("no inverse for {a} in GF({q})")))?
                    as u16;
            }
        }
        let mut field = Self { p, e, q: qs, modulus, add, mul, neg, inv, primitive: 0 };
        field.primitive = (1..qs)
            .find(|&a| field.mult_order(a as u16) == qs - 1)
            .expect("multiplicative group of a finite field is cyclic") as u16;
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Reduction polynomial as `(c_0, …, c_{e−1})` with `x^e = Σ c_i x^i`; empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u16, mut k: u64) -> u16 {
        let (mut base, mut acc) = (a, 1u16);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    /// Multiplicative order of a nonzero element (0 for zero).
    pub fn mult_order(&self, a: u16) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    /// Nonzero squares, ascending.
    pub fn squares(&self) -> Vec<u16> {
        let mut s: Vec<u16> = (1..self.q as u16).map(|x| self.mul(x, x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Nonzero non-squares, ascending.
    pub fn non_squares(&self) -> Vec<u16> {
        let sq = self.squares();
        (1..self.q as u16).filter(|x| sq.binary_search(x).is_err()).collect()
    }

    pub fn is_nonzero_square(&self, a: u16) -> bool {
        a != 0 && self.squares().binary_search(&a).is_ok()
    }

    /// Square indicator table indexed by element, for repeated lookups.
    pub fn square_table(&self) -> Vec<bool> {
        let mut t = vec![false; self.q];
        for x in 1..self.q as u16 {
            t[self.mul(x, x) as usize] = true;
        }
        t
    }

    /// Exhaustive field-axiom check; intended for small orders.
    pub fn check_axioms(&self) -> Vec<String> {
        let q = self.q as u16;
        let mut out = Vec::new();
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                out.push(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                out.push(format!("negation fails at {a}"));
            }
            if a != 0 && self.inv(a).map(|b| self.mul(a, b)) != Some(1) {
                out.push(format!("inverse fails at {a}"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    out.push(format!("commutativity fails at ({a},{b})"));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        out.push(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        out.push(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        out
    }
}

/// Product of two reduced polynomials modulo `x^e − Σ modulus_i x^i` over `Z_p`.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let e = a.len();
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    if modulus.is_empty() {
        return vec![prod[0]];
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let at = deg - e + i;
            prod[at] = (prod[at] + c * m) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Remainder of `f` (coefficients low to high) modulo monic `g` over `Z_p`.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// All monic polynomials of degree `d` over `Z_p`, as low-to-high coefficient vectors.
fn monic(p: u64, d: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d);
    (0..count).map(move |mut idx| {
        let mut c = vec![0u64; d as usize + 1];
        // enumerate (c_{d−1}, …, c_0) lexicographically
        for i in 0..d as usize {
            c[i] = idx % p;
            idx /= p;
        }
        c[d as usize] = 1;
        c
    })
}

/// The lexicographically smallest monic irreducible polynomial of degree `e`,
/// returned as the reduction `x^e = Σ c_i x^i`.
fn irreducible(p: u64, e: u32) -> Vec<u64> {
    let mut candidates: Vec<Vec<u64>> = monic(p, e).collect();
    // lexicographic on (c_{e−1}, …, c_0)
    candidates.sort_by(|a, b| a[..e as usize].iter().rev().cmp(b[..e as usize].iter().rev()));
    let f = candidates
        .into_iter()
        .find(|f| (1..=e / 2).all(|d| monic(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0))))
        .expect("irreducible polynomials exist in every degree");
    f[..e as usize].iter().map(|&c| (p - c) % p).collect()
}
