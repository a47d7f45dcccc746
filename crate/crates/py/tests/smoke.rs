use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn smoke_script_runs_against_the_module() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../python/smoke_test.py");
    let code = CString::new(std::fs::read_to_string(path).unwrap()).unwrap();
    Python::initialize();
    Python::attach(|py| -> PyResult<()> {
        let module = pyo3::wrap_pymodule!(nullgrid::nullgrid)(py);
        py.import("sys")?.getattr("modules")?.set_item("nullgrid", module)?;
        let globals = PyDict::new(py);
        globals.set_item("__name__", "__main__")?;
        py.run(&code, Some(&globals), None)
    })
    .unwrap_or_else(|e| panic!("smoke test failed: {e}"));
}
