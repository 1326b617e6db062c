//! Sylvester resultants with fraction-free (Bareiss) determinant
//! evaluation over the polynomial ring in the remaining variables.
//!
//! Sign convention: for `p = p_m v^m + ... + p_0` and `q = q_n v^n + ... + q_0`
//! the matrix has `n` shifted rows of `p`'s coefficients (highest first)
//! followed by `m` shifted rows of `q`'s. Its determinant is returned as is.

use super::{AlgebraError, Polynomial, Var};

/// Sylvester matrix of `p` and `q` with respect to `var`.
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, var: &Var) -> Vec<Vec<Polynomial>> {
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Polynomial::zero(); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for j in 0..m {
        let mut row = vec![Polynomial::zero(); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[j + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant of a square polynomial matrix by Bareiss elimination. Every
/// intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `p` and `q` with respect to `var`.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: &Var) -> Result<Polynomial, AlgebraError> {
    if p.degree_in(var) == 0 && q.degree_in(var) == 0 {
        return Err(AlgebraError::BothConstantInVar(var.name().to_string()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero());
    }
    Ok(bareiss_determinant(sylvester_matrix(p, q, var)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn small_hand_determinants() {
        let t = Var::new("t");
        // [[1,0,-x],[2,0,0],[0,2,0]] has determinant -4x.
        assert_eq!(resultant(&p("t^2-x"), &p("2*t"), &t).unwrap(), p("-4*x"));
        assert_eq!(
            resultant(&p("y-(x-t)^2"), &p("2*(x-t)"), &t).unwrap(),
            p("4*y")
        );
        assert_eq!(resultant(&p("t-1"), &p("t+1"), &t).unwrap(), p("2"));
    }

    #[test]
    fn constant_against_polynomial() {
        let t = Var::new("t");
        // deg_t p = 0: Res = p^deg(q).
        assert_eq!(resultant(&p("3"), &p("t^2+1"), &t).unwrap(), p("9"));
    }

    #[test]
    fn both_constant_is_an_error() {
        let t = Var::new("t");
        assert!(matches!(
            resultant(&p("x"), &p("y"), &t),
            Err(AlgebraError::BothConstantInVar(_))
        ));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<Polynomial>]) -> Polynomial {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = Polynomial::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &cofactor(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let m = vec![
            vec![p("0"), p("x"), p("1"), p("y")],
            vec![p("x+y"), p("2"), p("0"), p("1")],
            vec![p("1"), p("y^2"), p("x"), p("0")],
            vec![p("3"), p("0"), p("x*y"), p("x-1")],
        ];
        assert_eq!(bareiss_determinant(m.clone()), cofactor(&m));
    }
}
