//! Named polynomial families: the q-Catalan triangle, q-Catalan numbers,
//! q-Narayana numbers and q-super Catalan numbers.
//!
//! Each is built by one exact division, so every construction re-checks that
//! the value really is a polynomial.

use std::rc::Rc;

use crate::error::{QError, Result};
use crate::laurent::LaurentPoly;
use crate::qcore::QContext;

const TRIANGLE: u8 = 0;
const NARAYANA: u8 = 1;

fn exact(op: &'static str, num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    num.exact_div(den)
        .map_err(|failure| QError::Division { op, failure })
}

/// `B_{n,k}(q) = [k] / [n] * [2n choose n-k]` for `1 <= k <= n`.
pub fn catalan_triangle(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 1 || k < 1 || k > n {
        return Err(QError::invalid(
            "catalan_triangle",
            format!("need 1 <= k <= n, got n = {n}, k = {k}"),
        ));
    }
    QContext::new().catalan_triangle(n, k)
}

/// `C_n(q) = [2n choose n] / [n+1]`.
pub fn q_catalan(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(QError::invalid(
            "q_catalan",
            format!("n = {n} must be non-negative"),
        ));
    }
    QContext::new().catalan(n)
}

/// `N_q(n, k) = [n choose k] [n choose k-1] / [n]`; zero for `k` outside `1..=n`.
pub fn q_narayana(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(QError::invalid(
            "q_narayana",
            format!("n = {n} must be positive"),
        ));
    }
    QContext::new().narayana(n, k).map(Rc::unwrap_or_clone)
}

/// `[2m]! [2n]! / ([m+n]! [m]! [n]!)`.
pub fn q_super_catalan(m: i64, n: i64) -> Result<LaurentPoly> {
    if m < 1 || n < 1 {
        return Err(QError::invalid(
            "q_super_catalan",
            format!("m = {m}, n = {n} must both be positive"),
        ));
    }
    let ctx = QContext::new();
    let (m, n) = (m as usize, n as usize);
    let num = &*ctx.factorial(2 * m) * &*ctx.factorial(2 * n);
    let den = &*ctx.factorial(m + n) * &*ctx.factorial(m) * &*ctx.factorial(n);
    exact("q_super_catalan", &num, &den)
}

impl QContext {
    /// `B_{n,k}(q)` extended by zero outside `1 <= k <= n`.
    pub fn catalan_triangle_or_zero(&self, n: i64, k: i64) -> Result<Rc<LaurentPoly>> {
        if n < 1 || k < 1 || k > n {
            return Ok(Rc::new(LaurentPoly::zero()));
        }
        let key = (TRIANGLE, n, k);
        if let Some(p) = self.families.borrow().get(&key) {
            return Ok(Rc::clone(p));
        }
        let num = &*self.q_int(k as usize) * &*self.binomial(2 * n, n - k);
        let p = Rc::new(exact("catalan_triangle", &num, &self.q_int(n as usize))?);
        self.families.borrow_mut().insert(key, Rc::clone(&p));
        Ok(p)
    }

    pub fn catalan_triangle(&self, n: i64, k: i64) -> Result<LaurentPoly> {
        self.catalan_triangle_or_zero(n, k).map(Rc::unwrap_or_clone)
    }

    pub fn catalan(&self, n: i64) -> Result<LaurentPoly> {
        exact(
            "q_catalan",
            &self.binomial(2 * n, n),
            &self.q_int(n as usize + 1),
        )
    }

    /// `N_q(n, k)` for `n >= 1` and any integer `k`.
    pub fn narayana(&self, n: i64, k: i64) -> Result<Rc<LaurentPoly>> {
        if k < 1 || k > n {
            return Ok(Rc::new(LaurentPoly::zero()));
        }
        let key = (NARAYANA, n, k);
        if let Some(p) = self.families.borrow().get(&key) {
            return Ok(Rc::clone(p));
        }
        let num = &*self.binomial(n, k) * &*self.binomial(n, k - 1);
        let p = Rc::new(exact("q_narayana", &num, &self.q_int(n as usize))?);
        self.families.borrow_mut().insert(key, Rc::clone(&p));
        Ok(p)
    }
}
