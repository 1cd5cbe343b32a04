//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponents are stored in *half units* (an `i32` of `3` means exponent
//! `3/2`), because partition functions of graphs with an odd number of
//! vertices are half-integer polynomials in the pair variable.  Negative
//! exponents are allowed, so the type is really a sparse Laurent polynomial
//! with denominators restricted to square roots of variables.
//!
//! A [`PolyRing`] fixes the variable set and an optional truncation cap per
//! variable: any term whose exponent exceeds a cap is silently dropped.  Caps
//! bound intermediate growth in the symbolic Pfaffian expansions used by the
//! interior/exterior decomposition.

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rational_sqrt, Rational};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring: an ordered list of variable names plus optional
/// per-variable exponent caps (in half units).
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    caps: Vec<Option<i32>>,
}

impl PolyRing {
    /// Ring with the given variables and no caps.
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Arc<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let caps = vec![None; vars.len()];
        Arc::new(PolyRing { vars, caps })
    }

    /// Ring with per-variable caps given in half units.
    pub fn with_caps<S: Into<String>>(vars: Vec<S>, caps: Vec<Option<i32>>) -> Arc<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        assert_eq!(vars.len(), caps.len(), "one cap slot per variable");
        Arc::new(PolyRing { vars, caps })
    }

    /// Univariate ring in a single variable.
    pub fn univariate(var: &str) -> Arc<Self> {
        PolyRing::new(vec![var])
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    /// Index of a variable by name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn exceeds_cap(&self, exps: &[i32]) -> bool {
        exps.iter()
            .zip(&self.caps)
            .any(|(e, c)| matches!(c, Some(cap) if e > cap))
    }
}

/// A sparse polynomial over a shared [`PolyRing`].
///
/// Terms map exponent vectors (half units, one entry per ring variable) to
/// nonzero rational coefficients.  The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl SparsePoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        SparsePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = SparsePoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.num_vars()], c);
        }
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        SparsePoly::constant(ring, Rational::one())
    }

    /// The monomial `c * var^(half_units / 2)`.
    pub fn monomial(ring: &Arc<PolyRing>, var: usize, half_units: i32, c: Rational) -> Self {
        let mut exps = vec![0; ring.num_vars()];
        exps[var] = half_units;
        Self::from_term(ring, exps, c)
    }

    /// A single term with an explicit exponent vector (half units).
    pub fn from_term(ring: &Arc<PolyRing>, exps: Vec<i32>, c: Rational) -> Self {
        assert_eq!(exps.len(), ring.num_vars());
        let mut p = SparsePoly::zero(ring);
        if !c.is_zero() && !ring.exceeds_cap(&exps) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    fn insert_term(&mut self, exps: Vec<i32>, c: Rational) {
        if c.is_zero() || self.ring.exceeds_cap(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SparsePoly::zero(&self.ring);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = SparsePoly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }

    /// Coefficient of an exact exponent vector (half units).
    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = SparsePoly::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            // d/dx of x^(k/2) is (k/2) x^(k/2 - 1); one half-unit exponent
            // step is 2.
            let mut exps = e.clone();
            exps[var] = k - 2;
            let factor = Rational::new(k.into(), 2.into());
            out.insert_term(exps, c * factor);
        }
        out
    }

    /// Keep only the terms with exponent zero in every listed variable
    /// (i.e. evaluate those variables at zero).
    pub fn restrict_zero(&self, vars: &[usize]) -> Self {
        let mut out = SparsePoly::zero(&self.ring);
        for (e, c) in &self.terms {
            if vars.iter().all(|&v| e[v] == 0) {
                out.insert_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Group terms by their exponent pattern on `vars`, stripping those
    /// variables (their exponents are zeroed in the residual polynomials).
    /// The result maps each observed pattern (half units, in `vars` order)
    /// to the polynomial multiplying it.
    pub fn group_by_vars(&self, vars: &[usize]) -> BTreeMap<Vec<i32>, SparsePoly> {
        let mut out: BTreeMap<Vec<i32>, SparsePoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<i32> = vars.iter().map(|&v| e[v]).collect();
            let mut resid = e.clone();
            for &v in vars {
                resid[v] = 0;
            }
            out.entry(key)
                .or_insert_with(|| SparsePoly::zero(&self.ring))
                .insert_term(resid, c.clone());
        }
        out
    }

    /// Substitute a variable by a scaled monomial: `var := c * prod_j
    /// other_j^(repl[j]/2)`.  The substituted variable must occur with
    /// integer powers; half powers of the coefficient would leave the ring.
    pub fn substitute_monomial(
        &self,
        var: usize,
        c: &Rational,
        repl: &[i32],
    ) -> Result<Self> {
        assert_eq!(repl.len(), self.ring.num_vars());
        let mut out = SparsePoly::zero(&self.ring);
        for (e, coeff) in &self.terms {
            let k = e[var]; // half units
            if k % 2 != 0 {
                return Err(Error::BadPolynomial(format!(
                    "substitution into half power of {}",
                    self.ring.var_name(var)
                )));
            }
            let pow = k / 2; // actual integer exponent
            let mut exps = e.clone();
            exps[var] = 0;
            for (j, r) in repl.iter().enumerate() {
                exps[j] += r * pow;
            }
            let factor = if pow == 0 {
                Rational::one()
            } else if pow > 0 {
                num::pow::pow(c.clone(), pow as usize)
            } else {
                if c.is_zero() {
                    return Err(Error::BadPolynomial(
                        "negative power of zero in substitution".into(),
                    ));
                }
                num::pow::pow(c.clone(), (-pow) as usize).recip()
            };
            out.insert_term(exps, coeff * factor);
        }
        Ok(out)
    }

    // ---- univariate helpers -----------------------------------------------

    fn require_univariate(&self) -> Result<usize> {
        if self.ring.num_vars() == 1 {
            Ok(0)
        } else {
            Err(Error::BadPolynomial(format!(
                "expected univariate polynomial, ring has {} variables",
                self.ring.num_vars()
            )))
        }
    }

    /// Degree in half units of a univariate polynomial (`None` for zero).
    pub fn univariate_degree_half(&self) -> Option<i32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Evaluate a univariate polynomial at a rational point.  Exponents must
    /// be non-negative integers (evaluation at arbitrary points is only used
    /// for interpolation of genuine polynomials).
    pub fn eval_univariate(&self, t: &Rational) -> Result<Rational> {
        self.require_univariate()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let k = e[0];
            if k % 2 != 0 || k < 0 {
                return Err(Error::BadPolynomial(format!(
                    "cannot evaluate exponent {k}/2 at a point"
                )));
            }
            let pow = (k / 2) as usize;
            acc += c * num::pow::pow(t.clone(), pow);
        }
        Ok(acc)
    }

    /// Exact Lagrange interpolation through distinct sample points, in the
    /// given univariate ring.
    pub fn interpolate(ring: &Arc<PolyRing>, samples: &[(Rational, Rational)]) -> Result<Self> {
        if ring.num_vars() != 1 {
            return Err(Error::BadPolynomial("interpolation needs one variable".into()));
        }
        // Newton's divided differences, then expansion: O(n^2) exact.
        let n = samples.len();
        let mut coef: Vec<Rational> = samples.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let dx = &samples[i].0 - &samples[i - j].0;
                if dx.is_zero() {
                    return Err(Error::BadPolynomial("repeated interpolation node".into()));
                }
                coef[i] = (&coef[i] - &coef[i - 1]) / dx;
            }
        }
        // Horner expansion of the Newton form into monomial coefficients.
        let mut poly_coeffs: Vec<Rational> = vec![coef[n - 1].clone()];
        for i in (0..n - 1).rev() {
            // multiply by (x - x_i) and add coef[i]
            let xi = &samples[i].0;
            let mut next = vec![Rational::zero(); poly_coeffs.len() + 1];
            for (d, c) in poly_coeffs.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * xi;
            }
            next[0] += &coef[i];
            poly_coeffs = next;
        }
        let mut out = SparsePoly::zero(ring);
        for (d, c) in poly_coeffs.into_iter().enumerate() {
            out.insert_term(vec![2 * d as i32], c);
        }
        Ok(out)
    }

    /// Map a univariate polynomial in `v` with even integer exponents to the
    /// univariate ring in a new variable representing `v^2`.  Exponent `2k`
    /// of `v` becomes exponent `k` of the new variable; odd powers of `v`
    /// become half powers.
    pub fn halve_variable(&self, new_ring: &Arc<PolyRing>) -> Result<Self> {
        self.require_univariate()?;
        let mut out = SparsePoly::zero(new_ring);
        for (e, c) in &self.terms {
            let k = e[0];
            if k % 2 != 0 {
                return Err(Error::BadPolynomial(
                    "half power cannot be halved again".into(),
                ));
            }
            out.insert_term(vec![k / 2], c.clone());
        }
        Ok(out)
    }

    /// Map a univariate polynomial to the ring of its square root variable:
    /// exponent `k` becomes `2k`.  Inverse of [`halve_variable`].
    pub fn double_variable(&self, new_ring: &Arc<PolyRing>) -> Result<Self> {
        self.require_univariate()?;
        let mut out = SparsePoly::zero(new_ring);
        for (e, c) in &self.terms {
            out.insert_term(vec![2 * e[0]], c.clone());
        }
        Ok(out)
    }

    /// Exponent-to-coefficient pairs of a univariate polynomial, descending
    /// by exponent, with exponents rendered as `"3"` / `"3/2"` / `"-1"`.
    pub fn exponent_map(&self) -> Result<Vec<(String, String)>> {
        self.require_univariate()?;
        let mut out = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            out.push((format_exponent(e[0]), format_rational(c)));
        }
        Ok(out)
    }

    /// Rebuild a univariate polynomial from exponent/coefficient string
    /// pairs.
    pub fn from_exponent_map(
        ring: &Arc<PolyRing>,
        entries: &[(String, String)],
    ) -> Result<Self> {
        if ring.num_vars() != 1 {
            return Err(Error::BadPolynomial("expected univariate ring".into()));
        }
        let mut out = SparsePoly::zero(ring);
        for (es, cs) in entries {
            let half = parse_exponent(es)?;
            let c = parse_rational(cs)?;
            out.insert_term(vec![half], c);
        }
        Ok(out)
    }

    /// Human-readable rendering, largest exponent first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut pieces = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, k) in e.iter().enumerate() {
                if *k != 0 {
                    let name = self.ring.var_name(i);
                    if *k == 2 {
                        factors.push(name.to_string());
                    } else {
                        factors.push(format!("{}^{}", name, format_exponent(*k)));
                    }
                }
            }
            let coeff = format_rational(c);
            if factors.is_empty() {
                pieces.push(coeff);
            } else if c.is_one() {
                pieces.push(factors.join("*"));
            } else if (-c.clone()).is_one() {
                pieces.push(format!("-{}", factors.join("*")));
            } else {
                pieces.push(format!("{}*{}", coeff, factors.join("*")));
            }
        }
        pieces.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Render a half-unit exponent as a decimal or `n/2` string.
pub fn format_exponent(half: i32) -> String {
    if half % 2 == 0 {
        format!("{}", half / 2)
    } else {
        format!("{half}/2")
    }
}

/// Parse `"3"`, `"3/2"`, `"-1"` into half units.
pub fn parse_exponent(s: &str) -> Result<i32> {
    let r = parse_rational(s)?;
    let doubled = &r * Rational::from_integer(2.into());
    if !doubled.denom().is_one() {
        return Err(Error::InvalidInput(format!(
            "exponent {s:?} is not a half integer"
        )));
    }
    use num::ToPrimitive;
    doubled
        .to_integer()
        .to_i32()
        .ok_or_else(|| Error::InvalidInput(format!("exponent {s:?} out of range")))
}

/// Square root of a monomial coefficient, used by upper-bound substitutions.
pub fn coefficient_sqrt(c: &Rational) -> Result<Rational> {
    rational_sqrt(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn xring() -> Arc<PolyRing> {
        PolyRing::univariate("x")
    }

    #[test]
    fn arithmetic_basics() {
        let r = xring();
        // (x + 1)^2 = x^2 + 2x + 1
        let p = SparsePoly::monomial(&r, 0, 2, rat_i(1)).add(&SparsePoly::one(&r));
        let sq = p.mul(&p);
        assert_eq!(sq.coefficient(&[4]), rat_i(1));
        assert_eq!(sq.coefficient(&[2]), rat_i(2));
        assert_eq!(sq.coefficient(&[0]), rat_i(1));
        assert_eq!(sq.num_terms(), 3);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn half_exponents_render_and_parse() {
        let r = xring();
        let p = SparsePoly::monomial(&r, 0, 3, rat_i(5)); // 5 x^{3/2}
        let m = p.exponent_map().unwrap();
        assert_eq!(m, vec![("3/2".to_string(), "5".to_string())]);
        let q = SparsePoly::from_exponent_map(&r, &m).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_exponent("3/2").unwrap(), 3);
        assert_eq!(parse_exponent("-2").unwrap(), -4);
        assert!(parse_exponent("1/3").is_err());
    }

    #[test]
    fn caps_truncate() {
        let r = PolyRing::with_caps(vec!["y"], vec![Some(4)]); // cap exponent 2
        let y = SparsePoly::monomial(&r, 0, 2, rat_i(1));
        let y2 = y.mul(&y);
        assert_eq!(y2.coefficient(&[4]), rat_i(1));
        let y3 = y2.mul(&y);
        assert!(y3.is_zero(), "terms over the cap are dropped");
    }

    #[test]
    fn eval_and_interpolate_round_trip() {
        let r = xring();
        // p = 2x^3 - x + 1/2
        let p = SparsePoly::monomial(&r, 0, 6, rat_i(2))
            .add(&SparsePoly::monomial(&r, 0, 2, rat_i(-1)))
            .add(&SparsePoly::constant(&r, rat(1, 2)));
        let pts: Vec<(Rational, Rational)> = (-2..=1)
            .map(|k| {
                let t = rat_i(k);
                let y = p.eval_univariate(&t).unwrap();
                (t, y)
            })
            .collect();
        let q = SparsePoly::interpolate(&r, &pts).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn derivative_and_restrict() {
        let r = PolyRing::new(vec!["a", "b"]);
        // p = a^2 b + 3 a
        let a2b = SparsePoly::from_term(&r, vec![4, 2], rat_i(1));
        let a = SparsePoly::from_term(&r, vec![2, 0], rat_i(3));
        let p = a2b.add(&a);
        let d2 = p.derivative(0).derivative(0); // 2b
        assert_eq!(d2.coefficient(&[0, 2]), rat_i(2));
        assert_eq!(d2.num_terms(), 1);
        let restricted = p.restrict_zero(&[0]);
        assert!(restricted.is_zero());
    }

    #[test]
    fn group_and_substitute() {
        let r = PolyRing::new(vec!["a", "z"]);
        // p = a^2 z + 2a + 7
        let p = SparsePoly::from_term(&r, vec![4, 2], rat_i(1))
            .add(&SparsePoly::from_term(&r, vec![2, 0], rat_i(2)))
            .add(&SparsePoly::constant(&r, rat_i(7)));
        let groups = p.group_by_vars(&[0]);
        assert_eq!(groups.len(), 3);
        assert_eq!(groups[&vec![0]].coefficient(&[0, 0]), rat_i(7));
        // substitute a := 3 z^{1/2}: a^2 z -> 9 z^2, 2a -> 6 z^{1/2}
        let q = p.substitute_monomial(0, &rat_i(3), &[0, 1]).unwrap();
        assert_eq!(q.coefficient(&[0, 4]), rat_i(9));
        assert_eq!(q.coefficient(&[0, 1]), rat_i(6));
        assert_eq!(q.coefficient(&[0, 0]), rat_i(7));
    }

    #[test]
    fn halve_and_double_variable() {
        let z = PolyRing::univariate("z");
        let x = PolyRing::univariate("x");
        // z^4 + 4z^2 + 2  ->  x^2 + 4x + 2
        let p = SparsePoly::monomial(&z, 0, 8, rat_i(1))
            .add(&SparsePoly::monomial(&z, 0, 4, rat_i(4)))
            .add(&SparsePoly::constant(&z, rat_i(2)));
        let q = p.halve_variable(&x).unwrap();
        assert_eq!(q.coefficient(&[4]), rat_i(1));
        assert_eq!(q.coefficient(&[2]), rat_i(4));
        assert_eq!(q.coefficient(&[0]), rat_i(2));
        let back = q.double_variable(&z).unwrap();
        assert_eq!(back, p);
        // odd z-powers become half x-powers via halve on z^2... z^3 cannot.
        let odd = SparsePoly::monomial(&z, 0, 6, rat_i(1)); // z^3
        let half = odd.halve_variable(&x).unwrap(); // x^{3/2}
        assert_eq!(half.coefficient(&[3]), rat_i(1));
    }
}
