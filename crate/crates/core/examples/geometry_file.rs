//! Loading a sparse geometry file and emitting a markdown report.

use einstein_residue::verify::report::{run_case, Report, VerifyOptions};
use einstein_residue::verify::spec_file::parse_geometry;

const FILE: &str = r#"{
  "m": 2,
  "riemann": [{"indices": [1, 2, 1, 2], "value": "1/2"}, {"indices": [3, 4, 3, 4], "value": -1}],
  "v": {"value": [1, 0, 0, 0], "jacobian": [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]},
  "w": {"value": [0, 1, 0, 0]},
  "y": {"value": ["1/3", 0, 0, 1]},
  "tEval": [1, 0]
}"#;

fn main() -> einstein_residue::Result<()> {
    let loaded = parse_geometry(FILE)?;
    let case = run_case("inline", None, &loaded.geometry, loaded.t_eval.as_ref(), &VerifyOptions::default())?;
    print!("{}", Report::new("verify", None, false, vec![case]).to_markdown());
    Ok(())
}
