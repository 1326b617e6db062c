//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with the variable order `x < y < other names
//! alphabetically`. In that order `x` is the most significant variable, so
//! the canonical (descending) listing of `x^2 + 2xy + y^2` is exactly that.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; the coefficient domain everywhere in this crate.
pub type Rational = BigRational;

/// A polynomial variable: a lowercase identifier matching `[a-z][a-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Builds a variable without validating the name. Use
    /// [`Var::is_valid_name`] first for untrusted input.
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn x() -> Self {
        Var::new("x")
    }

    pub fn y() -> Self {
        Var::new("y")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
    }

    fn rank(&self) -> u8 {
        match &*self.0 {
            "x" => 0,
            "y" => 1,
            _ => 2,
        }
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(name: &str) -> Self {
        Var::new(name)
    }
}

/// Product of variable powers. Stored sorted by variable with no zero
/// exponents; the empty list is the constant monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var_pow(var: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial {
                powers: vec![(var, exp)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            powers: map.into_iter().filter(|(_, e)| *e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, var: &Var) -> u32 {
        self.powers
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (a, b) = (&self.powers[i], &other.powers[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for (v, e) in &self.powers {
            if j < other.powers.len() && other.powers[j].0 == *v {
                let f = other.powers[j].1;
                if f > *e {
                    return None;
                }
                if e - f > 0 {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else {
                if j < other.powers.len() && other.powers[j].0 < *v {
                    return None;
                }
                out.push((v.clone(), *e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { powers: out })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let powers = self
            .powers
            .iter()
            .filter_map(|(v, e)| {
                let f = other.degree_in(v);
                (f > 0).then(|| (v.clone(), (*e).min(f)))
            })
            .collect();
        Monomial { powers }
    }

    /// Removes `var` from the monomial, returning its former exponent.
    fn split_off(&self, var: &Var) -> (u32, Monomial) {
        let mut exp = 0;
        let powers = self
            .powers
            .iter()
            .filter(|(v, e)| {
                if v == var {
                    exp = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (exp, Monomial { powers })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                // Lexicographic on exponent vectors, most significant variable first.
                let (mut i, mut j) = (0, 0);
                loop {
                    match (self.powers.get(i), other.powers.get(j)) {
                        (None, None) => return Ordering::Equal,
                        (Some(_), None) => return Ordering::Greater,
                        (None, Some(_)) => return Ordering::Less,
                        (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => {
                                if ea != eb {
                                    return ea.cmp(eb);
                                }
                                i += 1;
                                j += 1;
                            }
                        },
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.powers.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Polynomial::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Polynomial::term(Rational::one(), Monomial::var_pow(Var::new(name), 1))
    }

    pub fn from_var(var: &Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var_pow(var.clone(), 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.powers.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn involves(&self, var: &Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(var) > 0)
    }

    pub fn degree_in(&self, var: &Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(var))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i`.
    /// The zero polynomial yields `[0]`.
    pub fn coeffs_in(&self, var: &Var) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coeffs_in`].
    pub fn from_coeffs_in(var: &Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var_pow(var.clone(), i as u32);
            for (m, k) in &c.terms {
                p.add_term(m.mul(&vm), k.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `var` (a polynomial in the others).
    pub fn lc_in(&self, var: &Var) -> Polynomial {
        self.coeffs_in(var).pop().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &Var) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::var_pow(var.clone(), e - 1));
            p.add_term(m2, c * Rational::from_integer(e.into()));
        }
        p
    }

    /// Substitutes polynomials for variables simultaneously. Unassigned
    /// variables pass through unchanged.
    pub fn eval_partial(&self, assignment: &BTreeMap<Var, Polynomial>) -> Polynomial {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (v, e) in &m.powers {
                match assignment.get(v) {
                    Some(sub) => {
                        let pw = powers.entry((v.clone(), *e)).or_insert_with(|| sub.pow(*e));
                        factor = &factor * &*pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            let rest = Monomial { powers: kept };
            out += factor.mul_monomial(&rest, &Rational::one());
        }
        out
    }

    /// Substitutes a single variable.
    pub fn substitute(&self, var: &Var, value: &Polynomial) -> Polynomial {
        let mut a = BTreeMap::new();
        a.insert(var.clone(), value.clone());
        self.eval_partial(&a)
    }

    /// Evaluates at rational values; `None` if some variable is unassigned.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.powers {
                let val = assignment.get(v)?;
                t *= num_traits::pow(val.clone(), *e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Convenience evaluation at a point `(x, y)` for curve polynomials.
    pub fn eval_xy(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let mut a = BTreeMap::new();
        a.insert(Var::x(), x.clone());
        a.insert(Var::y(), y.clone());
        self.eval(&a)
    }

    /// Floating-point evaluation; variables are looked up through `value`.
    pub fn eval_f64(&self, value: impl Fn(&Var) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (v, e) in &m.powers {
                    t *= value(v).powi(*e as i32);
                }
                t
            })
            .sum()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. With a single divisor, the graded division algorithm has
    /// zero remainder exactly when the divisor divides.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            rem -= divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Gcd of all monomials (the largest monomial factor).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Divides every term by a monomial known to divide all of them.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mono)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Leading coefficient under the canonical order.
    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Scales so the rational content is 1 and the leading term is positive.
    /// Unlike [`crate::algebra::primitive_part`], monomial factors are kept.
    pub fn normalize_content(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let content = super::rational_content(self.terms.values());
        let mut p = self.scale(&content.recip());
        if p.leading_coefficient().is_negative() {
            p = -p;
        }
        p
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_poly(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_poly(self))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::integer(n)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
