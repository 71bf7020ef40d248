use hyperflat::catalog::ENTRIES;
use hyperflat::samples;
use hyperflat::{emit_algebra, parse_algebra, AlgebraFile};
use hyperflat_core::HyperStruct;
use proptest::prelude::*;

#[test]
fn catalog_round_trips() {
  for e in ENTRIES {
    let f = parse_algebra(e.text).unwrap();
    assert_eq!(parse_algebra(&emit_algebra(&f)).unwrap(), f, "{}", e.name);
  }
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn emit_then_parse_is_identity(seed in any::<u64>(), m in 1usize..3, meta in "[a-z ]{0,20}") {
    let mut rng = samples::rng(seed);
    let alg = samples::nilpotent_algebra(&mut rng, 4 * m);
    let p = samples::invertible(&mut rng, 4 * m);
    let h = HyperStruct::standard(m).change_basis(&p).unwrap();
    let file = AlgebraFile::from_parts("fuzz", &alg, &h, vec![meta.trim().to_string()]);
    let text = emit_algebra(&file);
    let parsed = parse_algebra(&text).unwrap();
    prop_assert_eq!(&parsed, &file);
    prop_assert_eq!(parse_algebra(&emit_algebra(&parsed)).unwrap(), parsed.clone());
    prop_assert_eq!(parsed.algebra(), alg);
  }

  #[test]
  fn parser_never_panics(text in "(name x\n|dim [0-9]\n|bracket [0-9] [0-9] -> [0-9]:[-0-9/]{1,4}\n|matrix [IJKX]\n|[-0-9/ ]{0,12}\n|# c\n){0,12}") {
    let _ = parse_algebra(&text);
  }
}
