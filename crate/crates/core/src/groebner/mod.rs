//! Reduced Gröbner bases and the ideal toolkit built on them: membership, sums,
//! products, elimination, quotients, saturation, Krull dimension, support tests
//! and colength.

mod buchberger;
mod ideal;
mod quotient_ring;

use std::cell::Cell;

pub use buchberger::GroebnerBasis;
pub use ideal::Ideal;

use crate::polyring::MonomialOrdering;
use crate::Result;

/// Safety caps consulted by every Gröbner computation on the current thread,
/// and the working order for membership, dimension and colength.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Abort when an S-pair or basis element exceeds this total degree.
    pub max_degree: Option<u32>,
    /// Maximum number of quotient steps when saturating by one element.
    pub max_saturation_steps: usize,
    /// Order of [`Ideal::reduced_basis`]. Any global order gives the same
    /// answers; switching is a diagnostic.
    pub ordering: MonomialOrdering,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: None,
            max_saturation_steps: 50,
            ordering: MonomialOrdering::GrevLex,
        }
    }
}

thread_local! {
    static LIMITS: Cell<Limits> = Cell::new(Limits::default());
}

impl Limits {
    pub fn current() -> Limits {
        LIMITS.with(Cell::get)
    }

    /// Runs `f` with these limits installed on the current thread.
    pub fn scope<R>(self, f: impl FnOnce() -> R) -> R {
        struct Restore(Limits);
        impl Drop for Restore {
            fn drop(&mut self) {
                LIMITS.with(|l| l.set(self.0));
            }
        }
        let _restore = Restore(LIMITS.with(|l| l.replace(self)));
        f()
    }
}

/// The reduced Gröbner basis of `ideal` under `ord`.
pub fn buchberger(ideal: &Ideal, ord: MonomialOrdering) -> Result<std::sync::Arc<GroebnerBasis>> {
    ideal.groebner_basis(ord)
}

/// `f` reduced against `gb`.
pub fn normal_form(
    f: &crate::polyring::Polynomial,
    gb: &GroebnerBasis,
) -> Result<crate::polyring::Polynomial> {
    gb.normal_form(f)
}
