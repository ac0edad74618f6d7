use std::fmt;
use std::str::FromStr;

use super::ContextShape;

/// Static description of one rule of the path rewriting system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: u8,
    pub name: &'static str,
    /// Left-hand side in the reason grammar; `C[..]` marks a one-hole context.
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub uses_context: bool,
}

macro_rules! rule {
    ($id:expr, $name:expr, $ctx:expr, $lhs:expr => $rhs:expr) => {
        RewriteRule {
            id: $id,
            name: $name,
            lhs: $lhs,
            rhs: $rhs,
            uses_context: $ctx,
        }
    };
}

pub const RULES: [RewriteRule; 37] = [
    rule!(1, "sr", false, "sigma(rho)" => "rho"),
    rule!(2, "ss", false, "sigma(sigma(r))" => "r"),
    rule!(3, "tr", true, "tau(C[r],C[sigma(r)])" => "C[rho]"),
    rule!(4, "tsr", true, "tau(C[sigma(r)],C[r])" => "C[rho]"),
    rule!(5, "rrr", true, "tau(C[r],C[rho])" => "C[r]"),
    rule!(6, "lrr", true, "tau(C[rho],C[r])" => "C[r]"),
    rule!(7, "slr", true, "subL(C[r],C[rho])" => "C[r]"),
    rule!(8, "srr", true, "subR(C[rho],C[r])" => "C[r]"),
    rule!(9, "sls", true, "subL(subL(s,C[r]),C[sigma(r)])" => "s"),
    rule!(10, "slss", true, "subL(subL(s,C[sigma(r)]),C[r])" => "s"),
    rule!(11, "srs", true, "subR(C[s],subR(C[sigma(s)],r))" => "r"),
    rule!(12, "srrr", true, "subR(C[sigma(s)],subR(C[s],r))" => "r"),
    rule!(13, "mx2l", false, "mu[fst](xi[pair](r,s))" => "r"),
    rule!(14, "mx2r", false, "mu[snd](xi[pair](r,s))" => "s"),
    rule!(15, "mx3l", false, "mu[case](xi[inl](r),s,u)" => "s"),
    rule!(16, "mx3r", false, "mu[case](xi[inr](r),s,u)" => "u"),
    rule!(17, "mxl", false, "mu[app](s,xi[lambda](r))" => "r(s)"),
    rule!(18, "mxr", false, "mu[sigElim](xi[eps](r),s)" => "s"),
    rule!(19, "mx", false, "xi[pair](mu[fst](r),mu[snd](r))" => "r"),
    rule!(20, "mxx", false, "mu[case](t,xi[inl](r),xi[inr](s))" => "t"),
    rule!(21, "xmr", false, "xi[lambda](mu[app](rho,s))" => "s"),
    rule!(22, "mx1r", false, "mu[sigElim](s,xi[eps](r))" => "s"),
    rule!(23, "stss", false, "sigma(tau(r,s))" => "tau(sigma(s),sigma(r))"),
    rule!(24, "ssbl", false, "sigma(subL(r,s))" => "subR(sigma(s),sigma(r))"),
    rule!(25, "ssbr", false, "sigma(subR(r,s))" => "subL(sigma(s),sigma(r))"),
    rule!(26, "sx", false, "sigma(xi[k](r))" => "xi[k](sigma(r))"),
    rule!(27, "sxss", false, "sigma(xi[pair](s,r))" => "xi[pair](sigma(s),sigma(r))"),
    rule!(28, "sm", false, "sigma(mu[k](r))" => "mu[k](sigma(r))"),
    rule!(29, "smss", false, "sigma(mu[k](s,r))" => "mu[k](sigma(s),sigma(r))"),
    rule!(30, "smsss", false, "sigma(mu[case](r,u,v))" => "mu[case](sigma(r),sigma(u),sigma(v))"),
    rule!(31, "tsbll", false, "tau(r,subL(rho,s))" => "subL(r,s)"),
    rule!(32, "tsbrl", false, "tau(r,subR(s,rho))" => "subL(r,s)"),
    rule!(33, "tsblr", false, "tau(subL(r,s),t)" => "tau(r,subR(s,t))"),
    rule!(34, "tsbrr", false, "tau(subR(s,t),u)" => "subR(s,tau(t,u))"),
    rule!(35, "tt", false, "tau(tau(t,r),s)" => "tau(t,tau(r,s))"),
    rule!(36, "tts", true, "tau(C[u],tau(C[sigma(u)],v))" => "v"),
    rule!(37, "tst", true, "tau(C[sigma(u)],tau(C[u],v))" => "v"),
];

/// Names used for some rules in the prose definitions that precede the
/// numbered list. Canonical names always win when both spellings exist.
const ALIASES: &[(&str, u8)] = &[("trr", 5), ("tlr", 6), ("mxlr", 22)];

pub fn rule(id: u8) -> &'static RewriteRule {
    &RULES[usize::from(id) - 1]
}

pub fn rule_by_name(name: &str) -> Option<&'static RewriteRule> {
    RULES
        .iter()
        .find(|r| r.name == name)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == name).map(|&(_, id)| rule(id)))
}

/// A subset of the 37 rules plus the switches that alter individual rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet {
    mask: u64,
    /// Use the published right-hand side `u` for rule 37 instead of `v`.
    pub rule37_literal: bool,
    /// What may sit between a context's root and its hole.
    pub contexts: ContextShape,
}

impl RuleSet {
    pub fn all() -> Self {
        RuleSet::range(1, 37)
    }

    pub fn empty() -> Self {
        RuleSet {
            mask: 0,
            rule37_literal: false,
            contexts: ContextShape::Congruence,
        }
    }

    pub fn range(lo: u8, hi: u8) -> Self {
        let mut s = RuleSet::empty();
        for id in lo..=hi {
            s.insert(id);
        }
        s
    }

    pub fn from_ids(ids: impl IntoIterator<Item = u8>) -> Self {
        let mut s = RuleSet::empty();
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn with_rule37_literal(mut self, on: bool) -> Self {
        self.rule37_literal = on;
        self
    }

    pub fn with_contexts(mut self, shape: ContextShape) -> Self {
        self.contexts = shape;
        self
    }

    pub fn insert(&mut self, id: u8) {
        assert!((1..=37).contains(&id), "rule id {id} out of range");
        self.mask |= 1 << id;
    }

    pub fn contains(&self, id: u8) -> bool {
        (1..=37).contains(&id) && self.mask & (1 << id) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=37u8).filter(|&i| self.contains(i))
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::all()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rule list '{0}': expected ids 1..37, ranges like 1-35, or rule names")]
pub struct RuleListError(pub String);

impl FromStr for RuleSet {
    type Err = RuleListError;

    /// Accepts comma-separated ids, ranges and rule names: `1-35`, `1,2,35`, `tt,tr`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RuleListError(s.to_string());
        let mut set = RuleSet::empty();
        if s.trim().is_empty() || s.trim() == "none" {
            return Ok(set);
        }
        for part in s.split(',').map(str::trim) {
            let id_of = |t: &str| -> Option<u8> {
                t.parse::<u8>()
                    .ok()
                    .filter(|i| (1..=37).contains(i))
                    .or_else(|| rule_by_name(t).map(|r| r.id))
            };
            if let Some((a, b)) = part.split_once('-') {
                let (a, b) = (id_of(a.trim()).ok_or_else(err)?, id_of(b.trim()).ok_or_else(err)?);
                if a > b {
                    return Err(err());
                }
                (a..=b).for_each(|i| set.insert(i));
            } else {
                set.insert(id_of(part).ok_or_else(err)?);
            }
        }
        Ok(set)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<u8> = self.ids().collect();
        let mut first = true;
        let mut i = 0;
        while i < ids.len() {
            let mut j = i;
            while j + 1 < ids.len() && ids[j + 1] == ids[j] + 1 {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if j > i {
                write!(f, "{}-{}", ids[i], ids[j])?;
            } else {
                write!(f, "{}", ids[i])?;
            }
            i = j + 1;
        }
        if first {
            f.write_str("none")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_numbered() {
        for (i, r) in RULES.iter().enumerate() {
            assert_eq!(usize::from(r.id), i + 1);
        }
        let mut names: Vec<_> = RULES.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 37);
    }

    #[test]
    fn parse_lists() {
        assert_eq!("1-35".parse::<RuleSet>().unwrap().len(), 35);
        assert_eq!("1-37".parse::<RuleSet>().unwrap(), RuleSet::all());
        let s: RuleSet = "tt, tr,1,trr".parse().unwrap();
        assert_eq!(s.ids().collect::<Vec<_>>(), vec![1, 3, 5, 35]);
        assert!("0".parse::<RuleSet>().is_err());
        assert!("38".parse::<RuleSet>().is_err());
        assert!("5-3".parse::<RuleSet>().is_err());
        assert!("bogus".parse::<RuleSet>().is_err());
        assert!("".parse::<RuleSet>().unwrap().is_empty());
    }

    #[test]
    fn display_compacts_ranges() {
        assert_eq!(RuleSet::range(1, 35).to_string(), "1-35");
        assert_eq!(RuleSet::from_ids([1, 2, 5, 7, 8, 9]).to_string(), "1-2,5,7-9");
        assert_eq!(RuleSet::empty().to_string(), "none");
    }

    #[test]
    fn canonical_names_win_over_aliases() {
        assert_eq!(rule_by_name("tsbll").unwrap().id, 31);
        assert_eq!(rule_by_name("tlr").unwrap().id, 6);
        assert_eq!(rule_by_name("rrr").unwrap().id, 5);
    }
}
