#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Parsing either rejects the document or yields a model whose
    // invariants were re-validated; predicting on a grid must not panic.
    if let Ok(file) = bkp::io::model_from_json(data) {
        match file.model {
            bkp::io::ModelKind::Bkp(model) => {
                if let Ok(grid) = bkp::design::grid(model.data().bounds(), 3) {
                    let _ = model.predict(&grid, 0.95, 0.5);
                }
            }
            bkp::io::ModelKind::Dkp(model) => {
                if let Ok(grid) = bkp::design::grid(model.data().bounds(), 3) {
                    let _ = model.predict(&grid, 0.95);
                }
            }
        }
    }
});
