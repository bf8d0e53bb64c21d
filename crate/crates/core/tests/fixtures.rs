//! Every file under `fixtures/` must match its reference construction, also
//! after a parse/serialize round trip.

use std::path::PathBuf;

use ybe_core::retract::{parse_cross_maps, serialize_cross_maps, UnionSpec};
use ybe_core::solution::{parse_solution, parse_solution_json, serialize, serialize_json};
use ybe_core::{classify, known, SolutionMap};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn fixtures_match_reference_solutions() {
    let files = [
        ("n3.ybe", known::n3()),
        ("n4.ybe", known::n4()),
        ("n6.ybe", known::n6_non_involutive()),
        ("eleven.ybe", known::eleven_generators()),
        ("m12.ybe", known::m12()),
        ("level3.ybe", known::level3()),
    ];
    for (name, reference) in files {
        let parsed = parse_solution(&read(name)).unwrap();
        assert_eq!(parsed, reference, "{name}");
        assert_eq!(parsed.names(), reference.names(), "{name}");
        let again = parse_solution(&serialize(&parsed)).unwrap();
        assert_eq!(again, parsed, "{name}");
        assert_eq!(again.names(), parsed.names(), "{name}");
        let json = parse_solution_json(&serialize_json(&parsed).to_string()).unwrap().solution;
        assert_eq!(json, parsed, "{name}");
    }
}

#[test]
fn fixture_expectations() {
    for name in ["n3.ybe", "n4.ybe", "eleven.ybe", "m12.ybe", "level3.ybe"] {
        let s = parse_solution(&read(name)).unwrap();
        assert!(classify(&s).is_square_free_solution(), "{name}");
    }
    let n6 = classify(&parse_solution(&read("n6.ybe")).unwrap());
    assert!(n6.braided && n6.nondegenerate() && n6.square_free && !n6.involutive);
}

#[test]
fn union_fixtures_rebuild_n4() {
    let x = parse_solution(&read("n4_x.ybe")).unwrap();
    let y = parse_solution(&read("n4_y.ybe")).unwrap();
    assert_eq!(x, SolutionMap::trivial(2));
    assert_eq!(y, SolutionMap::trivial(2));
    let (xy, yx) = parse_cross_maps(&read("n4_cross.ybe"), 2, 2).unwrap();
    let expected = UnionSpec::from_partition(&known::n4(), &[0, 1], &[2, 3]).unwrap();
    assert_eq!((&xy, &yx), (&expected.xy, &expected.yx));
    let text = serialize_cross_maps(&expected);
    assert_eq!(parse_cross_maps(&text, 2, 2).unwrap(), (xy.clone(), yx));
    let (broken, _) = parse_cross_maps(&read("n4_cross_broken.ybe"), 2, 2).unwrap();
    assert_ne!(broken, xy);
}
