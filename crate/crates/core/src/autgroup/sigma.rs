use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::superalgebra::{AlgebraConfig, BasisIndex, Element, Family, HalfInt};

/// Parameters `(eps, alpha, mu, beta, gamma, x)` of the sigma family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaParams<F> {
    pub epsilon: i64,
    pub alpha: F,
    pub mu: F,
    pub beta: F,
    pub gamma: F,
    pub x: F,
}

impl<F: Field> SigmaParams<F> {
    /// Checked constructor: `eps = ±1`, `alpha mu != 0` and
    /// `x^2 = alpha^(2s) mu^3`.
    pub fn new(s: HalfInt, epsilon: i64, alpha: F, mu: F, beta: F, gamma: F, x: F) -> Result<Self> {
        let p = Self::new_unchecked(epsilon, alpha, mu, beta, gamma, x);
        p.validate(s)?;
        Ok(p)
    }

    pub fn new_unchecked(epsilon: i64, alpha: F, mu: F, beta: F, gamma: F, x: F) -> Self {
        SigmaParams {
            epsilon,
            alpha,
            mu,
            beta,
            gamma,
            x,
        }
    }

    /// Parameters with `x` a perfect root: for `s = 0`, `mu = t^2` and
    /// `x = t^3`; for `s = 1/2`, additionally `alpha = a^2` and `x = a t^3`.
    /// For `s = 0` the value `a` is used as `alpha` directly.
    pub fn from_roots(s: HalfInt, epsilon: i64, a: F, t: F, beta: F, gamma: F) -> Result<Self> {
        let mu = t.mul(&t);
        let t3 = mu.mul(&t);
        let (alpha, x) = if s.is_integer() {
            (a, t3)
        } else {
            (a.mul(&a), a.mul(&t3))
        };
        Self::new(s, epsilon, alpha, mu, beta, gamma, x)
    }

    pub fn identity() -> Self {
        Self::new_unchecked(1, F::one(), F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn validate(&self, s: HalfInt) -> Result<()> {
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(Error::ConstraintViolated {
                detail: format!("epsilon = {} is not 1 or -1", self.epsilon),
            });
        }
        if self.alpha.is_zero() {
            return Err(Error::ZeroParameter { name: "alpha" });
        }
        if self.mu.is_zero() {
            return Err(Error::ZeroParameter { name: "mu" });
        }
        let lhs = self.x.mul(&self.x);
        let rhs = self.root_target(s);
        if lhs != rhs {
            return Err(Error::ConstraintViolated {
                detail: format!("x^2 = {lhs} but alpha^(2s) mu^3 = {rhs}"),
            });
        }
        Ok(())
    }

    /// `alpha^(2s) mu^3`.
    pub fn root_target(&self, s: HalfInt) -> F {
        let mu3 = self.mu.mul(&self.mu).mul(&self.mu);
        if s.is_integer() {
            mu3
        } else {
            self.alpha.mul(&mu3)
        }
    }

    fn alpha_pow(&self, k: i64) -> F {
        self.alpha.pow(k).expect("alpha is nonzero")
    }

    fn eps(&self) -> F {
        F::from_int(self.epsilon)
    }

    /// `sigma(b)` from the closed form; `b` must be valid for `cfg.s`.
    pub fn image(&self, cfg: &AlgebraConfig<F>, b: BasisIndex) -> Element<F> {
        let s = cfg.s;
        let flip = |b: BasisIndex| BasisIndex::new(b.family, HalfInt::from_twice(self.epsilon * b.index.twice()));
        // k with b = X_{k+s} for odd families, X_k for even ones
        let k = match b.family {
            Family::L | Family::I => b.index.as_int().expect("integral index"),
            Family::G | Family::H => (b.index - s).as_int().expect("index in s + Z"),
        };
        let ak = self.alpha_pow(k);
        let kf = F::from_int(k);
        let fb = flip(b);
        match b.family {
            // eps a^k L_{ek} + k a^k beta I_{ek}
            Family::L => Element::from_terms([
                (fb, self.eps().mul(&ak)),
                (fb.with_family(Family::I), kf.mul(&ak).mul(&self.beta)),
            ]),
            // a^k mu I_{ek}
            Family::I => Element::term(fb, ak.mul(&self.mu)),
            // a^k x H_{e(k+s)}
            Family::H => Element::term(fb, ak.mul(&self.x)),
            // x/(mu eps) a^k G_{e(k+s)} + a^k (gamma + 2k beta x / mu) H_{e(k+s)}
            Family::G => {
                let mu_inv = self.mu.inv().expect("mu is nonzero");
                let c = self.x.mul(&mu_inv).mul(&self.eps()).mul(&ak);
                let two_k = F::from_int(2 * k);
                let d = ak.mul(&self.gamma.add(&two_k.mul(&self.beta).mul(&self.x).mul(&mu_inv)));
                Element::from_terms([(fb, c), (fb.with_family(Family::H), d)])
            }
        }
    }

    /// The alternative H-coefficient `a^k gamma + 2k(k-2s) beta a^k x / mu`
    /// for `sigma(G_{k+s})`. It does not give a homomorphism when
    /// `beta != 0`; kept for comparison.
    pub fn printed_g_h_coefficient(&self, s: HalfInt, k: i64) -> F {
        let ak = self.alpha_pow(k);
        let mu_inv = self.mu.inv().expect("mu is nonzero");
        let k_minus_2s = F::from_int(k - s.twice());
        let t = F::from_int(2 * k)
            .mul(&k_minus_2s)
            .mul(&self.beta)
            .mul(&ak)
            .mul(&self.x)
            .mul(&mu_inv);
        ak.mul(&self.gamma).add(&t)
    }
}

/// One named identity evaluated on a sigma map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}
