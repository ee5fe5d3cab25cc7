// Scenario files and built-in presets.
//
// `cargo run --example scenario_sweep`

use perceptual_qos::sweep::{self, run_scenario, Scenario, PRESET_NAMES};
use perceptual_qos::Result;

pub fn run_example() -> Result<()> {
    let text = r#"{
        "metric": "pop",
        "axis": { "variable": "pt_over_n0", "grid": [1, 10, 100] },
        "weight_params": { "gamma": 1.0, "theta": 0.5 },
        "epsilon": 2.0
    }"#;
    let scenario = Scenario::from_json(text)?;
    let mut out = std::io::stdout().lock();
    sweep::write_sweep_csv(&mut out, &run_scenario(&scenario)?)?;

    println!("presets: {}", PRESET_NAMES.join(", "));
    let fig6 = sweep::preset("fig6").expect("built-in preset");
    if let Some(d) = &fig6.description {
        println!("fig6: {d}");
    }
    sweep::write_sweep_csv(&mut out, &run_scenario(&fig6)?)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
