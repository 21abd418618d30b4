#![no_main]

use dynkin_orbits::certify::{validate, Certificate};
use dynkin_orbits::rep::Catalog;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cert) = Certificate::from_json(text) else { return };
    let Ok(q) = cert.quiver.to_quiver() else { return };
    let Ok(cat) = Catalog::new(q) else { return };
    if cat.check_spec(&cert.m).is_err() || cat.dim_of(&cert.m).total() > 10 {
        return;
    }
    // Validation must reject or accept without panicking.
    let _ = validate(&cat, &cert, &cert.m, &cert.n);
});
