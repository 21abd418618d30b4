#![no_main]

use std::sync::Arc;

use dynkin_orbits::io::{parse_representation, RepDoc};
use dynkin_orbits::rep::Catalog;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(rep) = parse_representation(text) else { return };
    let back = RepDoc::from_rep(&rep).to_rep().expect("round trip");
    assert_eq!(back, rep);
    if rep.total_dim() > 12 {
        return;
    }
    if let Ok(cat) = Catalog::from_arc(rep.quiver().clone()) {
        let spec = cat.decompose(&Arc::new(rep.clone())).expect("Dynkin representations decompose");
        assert_eq!(&cat.dim_of(&spec), rep.dim());
    }
});
