use super::Poly;
use crate::error::{Error, Result};
use crate::ff::FFElem;

impl Poly {
    /// `Res(self, g)` by the Euclidean remainder sequence.
    ///
    /// Each step uses `Res(f, g) = (-1)^{deg f deg g} lc(g)^{deg f - deg r} Res(g, r)`
    /// with `r = f mod g`, ending at `Res(f, c) = c^{deg f}` for a constant `c`.
    pub fn resultant(&self, g: &Poly) -> Result<FFElem> {
        self.check_field(g)?;
        if self.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ctx = self.ctx.clone();
        let mut acc = FFElem::ONE;
        let (mut a, mut b) = (self.clone(), g.clone());
        loop {
            let da = a.degree().expect("nonzero") as u64;
            let db = b.degree().expect("nonzero") as u64;
            if db == 0 {
                return Ok(ctx.mul(acc, ctx.pow_u64(b.lc(), da)));
            }
            if da == 0 {
                // Res(c, b) = c^{deg b}
                return Ok(ctx.mul(acc, ctx.pow_u64(a.lc(), db)));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(FFElem::ZERO);
            }
            let dr = r.degree().expect("nonzero") as u64;
            if (da * db) % 2 == 1 {
                acc = ctx.neg(acc);
            }
            acc = ctx.mul(acc, ctx.pow_u64(b.lc(), da - dr));
            a = b;
            b = r;
        }
    }
}
