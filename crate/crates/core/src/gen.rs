//! Seeded random reasons for property tests and the acceptance suite.

use rand::Rng;

use crate::reason::{MuKind, Reason, XiKind};

/// Shape of the untyped corpus: trees of depth at most `max_depth` over
/// `rho` and the variables `vars`.
#[derive(Debug, Clone)]
pub struct ReasonGen {
    pub max_depth: usize,
    pub vars: Vec<String>,
    /// Chance that a non-root node below the depth bound is a leaf.
    pub leaf_chance: f64,
}

impl Default for ReasonGen {
    fn default() -> Self {
        ReasonGen {
            max_depth: 6,
            vars: ["r", "s", "t"].map(String::from).to_vec(),
            leaf_chance: 0.35,
        }
    }
}

impl ReasonGen {
    pub fn sample(&self, rng: &mut impl Rng) -> Reason {
        self.node(rng, 1)
    }

    fn leaf(&self, rng: &mut impl Rng) -> Reason {
        let i = rng.gen_range(0..=self.vars.len());
        match self.vars.get(i) {
            Some(v) => Reason::var(v.clone()),
            None => Reason::Rho,
        }
    }

    fn node(&self, rng: &mut impl Rng, depth: usize) -> Reason {
        if depth >= self.max_depth || (depth > 1 && rng.gen_bool(self.leaf_chance)) {
            return self.leaf(rng);
        }
        let kid = |rng: &mut _| self.node(rng, depth + 1);
        // weights: sigma 3, tau 3, subL 1, subR 1, xi 3, mu 3, application 1
        match rng.gen_range(0..15) {
            0..=2 => Reason::sigma(kid(rng)),
            3..=5 => {
                let a = kid(rng);
                Reason::tau(a, kid(rng))
            }
            6 => {
                let a = kid(rng);
                Reason::sub_l(a, kid(rng))
            }
            7 => {
                let a = kid(rng);
                Reason::sub_r(a, kid(rng))
            }
            8..=10 => {
                let k = XiKind::ALL[rng.gen_range(0..XiKind::ALL.len())];
                let args = (0..k.arity()).map(|_| kid(rng)).collect();
                Reason::xi(k, args)
            }
            11..=13 => {
                let k = MuKind::ALL[rng.gen_range(0..MuKind::ALL.len())];
                let args = (0..k.arity()).map(|_| kid(rng)).collect();
                Reason::mu(k, args)
            }
            _ => {
                let a = kid(rng);
                Reason::rapp(a, kid(rng))
            }
        }
    }
}
