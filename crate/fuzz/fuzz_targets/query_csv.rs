#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // First byte selects the expected dimension, the rest is the file.
    let Some((&sel, rest)) = data.split_first() else { return };
    let d = (sel as usize % 4) + 1;
    let _ = bkp::io::read_query_csv(rest, d);
});
