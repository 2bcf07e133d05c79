//! The global, ordered alphabet of indeterminates.
//!
//! The base alphabet is fixed; auxiliary names (`z1`, `x3`, ...) are appended
//! in registration order, so canonical forms stay stable for a whole run.

use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Base alphabet in frozen order.
pub const BASE_ALPHABET: [&str; 10] = ["q", "t", "u", "v", "t1", "t2", "w1", "w2", "x", "y"];

fn registry() -> &'static RwLock<Vec<String>> {
    static REGISTRY: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(BASE_ALPHABET.iter().map(|s| s.to_string()).collect()))
}

/// An indeterminate, identified by its position in the global alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u16);

impl Var {
    /// Looks up `name`, registering it at the end of the alphabet if needed.
    ///
    /// Panics on names that are not identifiers or on the reserved series
    /// variable `Q`.
    pub fn named(name: &str) -> Var {
        assert!(is_identifier(name), "invalid variable name {name:?}");
        assert!(name != "Q", "`Q` is reserved for the series variable");
        if let Some(v) = Var::lookup(name) {
            return v;
        }
        let mut reg = registry().write().expect("variable registry poisoned");
        if let Some(i) = reg.iter().position(|s| s == name) {
            return Var(i as u16);
        }
        reg.push(name.to_string());
        Var(u16::try_from(reg.len() - 1).expect("too many variables"))
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = registry().read().expect("variable registry poisoned");
        reg.iter().position(|s| s == name).map(|i| Var(i as u16))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        let reg = registry().read().expect("variable registry poisoned");
        assert!(i < reg.len(), "unregistered variable index {i}");
        Var(i as u16)
    }

    pub fn name(self) -> String {
        registry().read().expect("variable registry poisoned")[self.index()].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_order_is_frozen() {
        for (i, name) in BASE_ALPHABET.iter().enumerate() {
            assert_eq!(Var::named(name).index(), i);
        }
    }

    #[test]
    fn auxiliary_names_register_after_base() {
        let z = Var::named("zaux1");
        assert!(z.index() >= BASE_ALPHABET.len());
        assert_eq!(Var::named("zaux1"), z);
        assert_eq!(z.name(), "zaux1");
    }
}
