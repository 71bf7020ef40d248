//! Algebras bundled with the tool.

use crate::format::{parse_algebra, AlgebraFile};

#[derive(Clone, Copy, Debug)]
pub struct Entry {
  pub name: &'static str,
  pub text: &'static str,
  /// Whether the Obata connection of this entry is expected to be flat.
  pub expect_flat: bool,
}

macro_rules! entry {
  ($name:literal, $flat:expr) => {
    Entry { name: $name, text: include_str!(concat!("../catalog/", $name, ".alg")), expect_flat: $flat }
  };
}

pub const ENTRIES: &[Entry] = &[
  entry!("abelian-h1", true),
  entry!("abelian-h2", true),
  entry!("quaternionic-heisenberg-r1", true),
  entry!("complex-heisenberg-r2", true),
  entry!("heisenberg5-r3", true),
  entry!("three-step-flat-12", true),
  entry!("three-step-nonflat-12", false),
];

impl Entry {
  pub fn parse(&self) -> AlgebraFile {
    parse_algebra(self.text).expect("bundled entries parse")
  }
}

pub fn find(name: &str) -> Option<&'static Entry> {
  ENTRIES.iter().find(|e| e.name == name)
}
