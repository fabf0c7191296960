//! Command-line values: prime sets, class names, subgroups.

use pigroups_core::{ClassSpec, Group, PrimeSet, Subgroup};
use thiserror::Error;

use crate::corpus::parse_generators;

#[derive(Debug, Error)]
pub enum ArgError {
    #[error("malformed prime set {text:?}: {reason}")]
    Pi { text: String, reason: String },
    #[error("unknown class {0:?}; expected all, trivial, nilpotent, epi, npiprime or npi")]
    Class(String),
    #[error("bad subgroup {text:?}: {source}")]
    Subgroup {
        text: String,
        #[source]
        source: pigroups_core::Error,
    },
}

/// A comma list of primes; empty means π = ∅, a trailing `'` takes the
/// complement.
pub fn parse_pi(text: &str) -> Result<PrimeSet, ArgError> {
    let err = |reason: String| ArgError::Pi {
        text: text.to_string(),
        reason,
    };
    let trimmed = text.trim().trim_start_matches('{');
    let (body, complement) = match trimmed.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (trimmed, false),
    };
    let body = body.trim_end_matches('}');
    let primes = body
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| err(format!("{p:?} is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    let set = PrimeSet::new(primes).map_err(|e| err(e.to_string()))?;
    Ok(if complement { set.complement() } else { set })
}

/// A class name, taking π from `pi` unless written with its own set, as in
/// `npi{3,5}`.
pub fn parse_class(text: &str, pi: &PrimeSet) -> Result<ClassSpec, ArgError> {
    let text = text.trim();
    let (name, own) = match text.find('{') {
        Some(at) => (&text[..at], Some(parse_pi(&text[at..])?)),
        None => (text, None),
    };
    let pi = own.unwrap_or_else(|| pi.clone());
    Ok(match name.to_ascii_lowercase().as_str() {
        "all" => ClassSpec::All,
        "trivial" => ClassSpec::Trivial,
        "nilpotent" => ClassSpec::Nilpotent,
        "epi" => ClassSpec::PiGroups(pi),
        "npiprime" => ClassSpec::NilpotentPiPrime(pi),
        "npi" => ClassSpec::Npi(pi),
        _ => return Err(ArgError::Class(text.to_string())),
    })
}

/// A generator list such as `(1 2),(1 2 3)`; empty gives the trivial subgroup.
pub fn parse_subgroup(group: &Group, text: &str) -> Result<Subgroup, ArgError> {
    let wrap = |source| ArgError::Subgroup {
        text: text.to_string(),
        source,
    };
    let perms = parse_generators(text, group.degree()).map_err(wrap)?;
    group.subgroup_from_perms(&perms).map_err(wrap)
}

/// Generator lists separated by `;`.
pub fn parse_subgroups(group: &Group, text: &str) -> Result<Vec<Subgroup>, ArgError> {
    text.split(';').map(|s| parse_subgroup(group, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pigroups_core::parse_permutation;

    #[test]
    fn prime_sets() {
        assert_eq!(parse_pi("").unwrap(), PrimeSet::empty());
        assert_eq!(parse_pi(" 3, 2 ").unwrap(), PrimeSet::new([2, 3]).unwrap());
        assert_eq!(parse_pi("{2,3}'").unwrap(), PrimeSet::new([2, 3]).unwrap().complement());
        assert!(parse_pi("4").is_err());
        assert!(parse_pi("two").is_err());
        let pi = PrimeSet::new([3, 5]).unwrap();
        assert_eq!(parse_pi(&pi.to_string()).unwrap(), pi);
        assert_eq!(parse_pi(&pi.complement().to_string()).unwrap(), pi.complement());
    }

    #[test]
    fn classes() {
        let pi = PrimeSet::new([3, 5]).unwrap();
        assert_eq!(parse_class("npi", &pi).unwrap(), ClassSpec::Npi(pi.clone()));
        assert_eq!(
            parse_class("epi{2}", &pi).unwrap(),
            ClassSpec::PiGroups(PrimeSet::single(2))
        );
        assert_eq!(parse_class("Nilpotent", &pi).unwrap(), ClassSpec::Nilpotent);
        assert!(parse_class("soluble", &pi).is_err());
    }

    #[test]
    fn subgroups() {
        let g = Group::generate(
            &[parse_permutation("(1 2)", 4).unwrap(), parse_permutation("(1 2 3 4)", 4).unwrap()],
            4,
        )
        .unwrap();
        assert_eq!(parse_subgroup(&g, "(1 2),(3 4)").unwrap().order(), 4);
        assert_eq!(parse_subgroup(&g, "").unwrap().order(), 1);
        assert!(parse_subgroup(&g, "(1 5)").is_err());
        let seeds = parse_subgroups(&g, "(1 2 3);(1 2)(3 4)").unwrap();
        assert_eq!(seeds.iter().map(Subgroup::order).collect::<Vec<_>>(), [3, 2]);
    }
}
