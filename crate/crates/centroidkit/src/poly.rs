//! Univariate polynomials over Q.
//!
//! Coefficients ascend; the zero polynomial has no coefficients. Rational
//! root extraction works on the primitive integer form via divisor
//! enumeration, so it refuses (rather than guesses) when the constant or
//! leading coefficient is too large to factor by trial division.
//! Irreducibility and factorization are complete for degree <= 4: linear
//! factors via rational roots, quadratic splits of quartics via the
//! resolvent cubic.

use crate::error::{Error, Result};
use crate::linalg::echelon::Echelon;
use crate::linalg::matrix::Matrix;
use crate::rational::{rat, sqrt_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Poly(vec![Rat::zero(), Rat::one()])
    }

    /// x - r
    pub fn linear(r: &Rat) -> Self {
        Poly(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dn = divisor.0.len();
        if rem.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dn + 1];
        let lead = divisor.leading();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in divisor.0.iter().enumerate() {
                let v = &rem[k + i] - &(&c * d);
                rem[k + i] = v;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: (g, u, v) monic with u*self + v*other = g.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::constant(Rat::one()), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::constant(Rat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let nu = u0.sub(&q.mul(&u1));
            let nv = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let l = r0.leading();
        let inv = Rat::one() / l;
        (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let c = self.0[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a * &rat((i + 1) as i64))
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Evaluates at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Primitive integer form: content-1 integer coefficients, positive leading.
    fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        for c in &mut ints {
            *c /= &g;
        }
        ints
    }

    /// All distinct rational roots. Errors when divisor enumeration would
    /// need to factor integers beyond trial-division range.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::invalid("rational roots of the zero polynomial"));
        }
        // Work on the squarefree part; multiplicities are irrelevant here.
        let sf = self.div_rem(&self.gcd(&self.derivative())).0;
        let mut ints = sf.primitive_integer();
        let mut roots = Vec::new();
        // Strip x^k: zero roots.
        let mut zero_root = false;
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
            zero_root = true;
        }
        if zero_root {
            roots.push(Rat::zero());
        }
        if ints.len() <= 1 {
            roots.sort();
            return Ok(roots);
        }
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let sfp = Poly::from_coeffs(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
        for p in divisors(&a0)? {
            for q in divisors(&an)? {
                for sign in [1i64, -1] {
                    let cand = Rat::new(BigInt::from(sign) * &p, q.clone());
                    if sfp.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Complete irreducibility test over Q for degree 1..=4.
    pub fn is_irreducible_deg_le4(&self) -> Result<bool> {
        let deg = self
            .degree()
            .filter(|d| *d >= 1)
            .ok_or_else(|| Error::invalid("irreducibility needs degree >= 1"))?;
        if deg > 4 {
            return Err(Error::Limit(format!(
                "irreducibility test implemented for degree <= 4, got {deg}"
            )));
        }
        match deg {
            1 => Ok(true),
            2 | 3 => Ok(self.rational_roots()?.is_empty()),
            _ => {
                if !self.rational_roots()?.is_empty() {
                    return Ok(false);
                }
                Ok(quartic_quadratic_split(&self.monic())?.is_none())
            }
        }
    }

    /// Irreducible factors with multiplicity, for total degree <= 4.
    pub fn factor_deg_le4(&self) -> Result<Vec<(Poly, usize)>> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::invalid("factoring the zero polynomial"))?;
        if deg > 4 {
            return Err(Error::Limit(format!(
                "factorization implemented for degree <= 4, got {deg}"
            )));
        }
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        let mut rem = self.monic();
        // Peel rational roots with multiplicity.
        loop {
            if rem.degree() == Some(0) {
                break;
            }
            let roots = rem.rational_roots()?;
            let Some(r) = roots.first() else { break };
            let lin = Poly::linear(r);
            let mut mult = 0;
            loop {
                let (q, s) = rem.div_rem(&lin);
                if s.is_zero() {
                    rem = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            factors.push((lin, mult));
        }
        match rem.degree() {
            None | Some(0) => {}
            Some(1) | Some(2) | Some(3) => factors.push((rem.clone(), 1)),
            Some(4) => match quartic_quadratic_split(&rem)? {
                Some((f, g)) => {
                    if f == g {
                        factors.push((f, 2));
                    } else {
                        factors.push((f, 1));
                        factors.push((g, 1));
                    }
                }
                None => factors.push((rem.clone(), 1)),
            },
            Some(d) => {
                return Err(Error::Limit(format!(
                    "rootless factor of degree {d} out of range"
                )))
            }
        }
        factors.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
        });
        Ok(factors)
    }
}

/// Positive divisors of |n| by trial division; refuses huge inputs.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Err(Error::invalid("divisors of zero"));
    }
    let Some(small) = n.to_u64() else {
        return Err(Error::Limit(
            "rational root extraction: coefficient exceeds divisor-enumeration range".into(),
        ));
    };
    if small > 10_000_000_000_000 {
        return Err(Error::Limit(
            "rational root extraction: coefficient exceeds divisor-enumeration range".into(),
        ));
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Splits a monic rootless quartic into two monic rational quadratics, when
/// possible. Uses the resolvent cubic of the depressed form.
fn quartic_quadratic_split(q: &Poly) -> Result<Option<(Poly, Poly)>> {
    assert_eq!(q.degree(), Some(4));
    let a = q.coeff(3);
    // Depress: x = y - a/4 gives y^4 + p y^2 + s y + r.
    let shift = -(&a / &rat(4));
    let dep = compose_linear(q, &shift);
    let p = dep.coeff(2);
    let s = dep.coeff(1);
    let r = dep.coeff(0);
    // y^4 + p y^2 + s y + r = (y^2 + u y + v)(y^2 - u y + w) requires
    // v + w - u^2 = p, u(w - v) = s, v w = r. With z = u^2:
    // z^3 + 2p z^2 + (p^2 - 4r) z - s^2 = 0 (z = 0 allowed only when s = 0).
    let resolvent = Poly::from_coeffs(vec![
        -(&s * &s),
        &(&p * &p) - &(&rat(4) * &r),
        rat(2) * &p,
        Rat::one(),
    ]);
    for z in resolvent.rational_roots()? {
        let Some(u) = sqrt_rat(&z) else { continue };
        if u.is_zero() {
            if !s.is_zero() {
                continue;
            }
            // (y^2 + v)(y^2 + w) with v + w = p, v w = r.
            let disc = &(&p * &p) - &(&rat(4) * &r);
            let Some(sq) = sqrt_rat(&disc) else { continue };
            let v = (&p + &sq) / rat(2);
            let w = (&p - &sq) / rat(2);
            let f = undepress(&Poly::from_coeffs(vec![v, Rat::zero(), Rat::one()]), &shift);
            let g = undepress(&Poly::from_coeffs(vec![w, Rat::zero(), Rat::one()]), &shift);
            return Ok(Some(order_pair(f, g)));
        }
        // w - v = s/u, w + v = p + z.
        let diff = &s / &u;
        let sum = &p + &z;
        let w = (&sum + &diff) / rat(2);
        let v = (&sum - &diff) / rat(2);
        if &(&v * &w) != &r {
            continue;
        }
        let f = undepress(
            &Poly::from_coeffs(vec![v, u.clone(), Rat::one()]),
            &shift,
        );
        let g = undepress(&Poly::from_coeffs(vec![w, -u, Rat::one()]), &shift);
        return Ok(Some(order_pair(f, g)));
    }
    Ok(None)
}

fn order_pair(f: Poly, g: Poly) -> (Poly, Poly) {
    if format!("{f:?}") <= format!("{g:?}") {
        (f, g)
    } else {
        (g, f)
    }
}

/// q(x + shift)
fn compose_linear(q: &Poly, shift: &Rat) -> Poly {
    let sub = Poly::from_coeffs(vec![shift.clone(), Rat::one()]);
    let mut acc = Poly::zero();
    for c in q.coeffs().iter().rev() {
        acc = acc.mul(&sub).add(&Poly::constant(c.clone()));
    }
    acc
}

/// Reverses the depression substitution: f(y) with y = x - shift.
fn undepress(f: &Poly, shift: &Rat) -> Poly {
    compose_linear(f, &-shift.clone())
}

/// Minimal polynomial of a square matrix, via per-vector annihilators.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return Poly::constant(Rat::one());
    }
    let mut minpoly = Poly::constant(Rat::one());
    for start in 0..n {
        // Krylov sequence e, Me, M^2 e, ... until dependent.
        if minpoly.degree() == Some(n) {
            break;
        }
        let mut ech = Echelon::new(n);
        let mut powers: Vec<Vec<Rat>> = Vec::new();
        let mut v = crate::linalg::matrix::unit_vec(n, start);
        loop {
            if ech.insert_dense(&v).is_none() {
                break;
            }
            powers.push(v.clone());
            v = m.apply(&v);
        }
        // v = sum c_i powers[i]; annihilator is x^k - sum c_i x^i.
        let coords = solve_in_span(&powers, &v);
        let k = powers.len();
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = Rat::one();
        for (i, ci) in coords.iter().enumerate() {
            c[i] = -ci.clone();
        }
        let ann = Poly::from_coeffs(c);
        let g = minpoly.gcd(&ann);
        minpoly = minpoly.mul(&ann.div_rem(&g).0);
    }
    minpoly.monic()
}

fn solve_in_span(span: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    // span vectors are linearly independent by construction.
    let n = v.len();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        rows.push(span.iter().map(|s| s[r].clone()).collect());
    }
    let m = Matrix::from_rows(rows).unwrap();
    let (x, _) = crate::linalg::echelon::solve_dense(&m, v)
        .expect("Krylov dependency must be solvable");
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let p = poly(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());
        let g = p.gcd(&poly(&[-1, 1]));
        assert_eq!(g, poly(&[-1, 1]));
        let (g2, u, v) = poly(&[-1, 0, 1]).extended_gcd(&poly(&[1, 1]));
        assert_eq!(g2, poly(&[1, 1]));
        let lhs = u.mul(&poly(&[-1, 0, 1])).add(&v.mul(&poly(&[1, 1])));
        assert_eq!(lhs, g2);
    }

    #[test]
    fn rational_roots_found_exactly() {
        // 6x^2 - x - 1 = (3x + 1)(2x - 1)
        let p = poly(&[-1, -1, 6]);
        assert_eq!(p.rational_roots().unwrap(), vec![ratio(-1, 3), ratio(1, 2)]);
        // x^2 - 2 has none.
        assert!(poly(&[-2, 0, 1]).rational_roots().unwrap().is_empty());
        // x^3 - x has three.
        assert_eq!(
            poly(&[0, -1, 0, 1]).rational_roots().unwrap(),
            vec![rat(-1), rat(0), rat(1)]
        );
    }

    #[test]
    fn irreducibility_catalogue() {
        assert!(poly(&[-2, 0, 1]).is_irreducible_deg_le4().unwrap()); // x^2-2
        assert!(!poly(&[-1, 0, 1]).is_irreducible_deg_le4().unwrap()); // x^2-1
        assert!(poly(&[2, 0, 0, 1]).is_irreducible_deg_le4().unwrap()); // x^3+2
        assert!(poly(&[1, 0, 0, 0, 1]).is_irreducible_deg_le4().unwrap()); // x^4+1
        assert!(!poly(&[4, 0, 0, 0, 1]).is_irreducible_deg_le4().unwrap()); // x^4+4
        assert!(!poly(&[6, 0, -5, 0, 1]).is_irreducible_deg_le4().unwrap()); // (x^2-2)(x^2-3)
        assert!(poly(&[1, 1, 1, 1, 1]).is_irreducible_deg_le4().unwrap()); // cyclotomic 5
        assert!(poly(&[0, 1]).is_irreducible_deg_le4().unwrap()); // x
        assert!(poly(&[0, 0, 1]).is_irreducible_deg_le4().is_ok()); // x^2 reducible
        assert!(!poly(&[0, 0, 1]).is_irreducible_deg_le4().unwrap());
    }

    #[test]
    fn quartic_factorizations_verify() {
        for coeffs in [
            [4i64, 0, 0, 0, 1],   // x^4+4 = (x^2-2x+2)(x^2+2x+2)
            [6, 0, -5, 0, 1],     // (x^2-2)(x^2-3)
            [1, 2, 3, 2, 1],      // (x^2+x+1)^2
            [-6, 1, 4, -1, 1],    // mixed roots
        ] {
            let p = Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect());
            let factors = p.factor_deg_le4().unwrap();
            let mut prod = Poly::constant(Rat::one());
            for (f, m) in &factors {
                for _ in 0..*m {
                    prod = prod.mul(f);
                }
                assert!(f.is_irreducible_deg_le4().unwrap(), "factor {f:?} reducible");
            }
            assert_eq!(prod, p.monic(), "product of factors mismatches for {coeffs:?}");
        }
    }

    #[test]
    fn minimal_polynomials_of_matrices() {
        // Jordan block J_2(0) ++ (1): minpoly x^2 (x - 1).
        let m = Matrix::from_rows(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ])
        .unwrap();
        let p = minimal_polynomial(&m);
        assert_eq!(p, poly(&[0, 0, 1]).mul(&poly(&[-1, 1])).monic());
        assert!(p.eval_matrix(&m).is_zero());
        // Identity: minpoly x - 1.
        assert_eq!(minimal_polynomial(&Matrix::identity(4)), poly(&[-1, 1]));
        // Companion of x^2 - 2.
        let c = Matrix::from_rows(vec![vec![rat(0), rat(2)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(minimal_polynomial(&c), poly(&[-2, 0, 1]));
    }
}
