//! Browser bindings. Each function takes the polytope file contents
//! (`{"name": ..., "vertices": [[...], ...]}`) and returns a JSON string:
//! `{"report": <machine block>, "display": <text rendering>}` on success or
//! `{"error": <message>, "exit_code": <code>}` on failure.

use serde_json::json;
use toric_versal::report::{self, Command, Options};
use wasm_bindgen::prelude::*;

fn respond(command: Command, input: &str, opts: &Options) -> String {
    let result = report::parse_input(input)
        .and_then(|i| report::polytope_from_input(&i))
        .and_then(|p| report::run(command, &p, opts));
    let value = match result {
        Ok(r) => json!({ "report": r.machine, "display": r.display }),
        Err(e) => json!({ "error": e.to_string(), "exit_code": e.exit_code() }),
    };
    value.to_string()
}

/// Summand cone, scheme generators, base presentation and reduced components.
#[wasm_bindgen]
pub fn scheme_json(input: &str) -> String {
    respond(Command::Scheme, input, &Options::default())
}

/// Hilbert basis and equations of the singularity.
#[wasm_bindgen]
pub fn singularity_json(input: &str) -> String {
    respond(Command::Singularity, input, &Options::default())
}

/// Graded T1, T2 and W in the multiples of R*.
#[wasm_bindgen]
pub fn cohomology_json(input: &str) -> String {
    respond(Command::Cohomology, input, &Options::default())
}
