#![no_main]

use dynkin_orbits::io::parse_quiver;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_quiver(text) {
        if let Some(t) = q.classify() {
            assert_eq!(t.rank, q.vertex_count());
            let roots = q.positive_roots().expect("Dynkin quiver has roots");
            assert!(roots.iter().all(|r| q.euler_form(r, r).unwrap() == 1));
        }
    }
});
