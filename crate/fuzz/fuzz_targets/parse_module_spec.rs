#![no_main]

use dynkin_orbits::io::parse_module_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let roots = text.split(',').count();
    if let Ok(m) = parse_module_spec(text, roots) {
        let printed: Vec<String> = m.0.iter().map(usize::to_string).collect();
        assert_eq!(parse_module_spec(&printed.join(","), roots).unwrap(), m);
    }
});
