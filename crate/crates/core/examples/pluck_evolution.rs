//! Project a center pluck onto the pinned-clamped beam and print a few
//! displacement snapshots.

use beamspec::{
    build_modes, evaluate_solution, modal_energy, parse_case, project, BeamGeometry,
    InitialState, MaterialParams, Profile, QuadratureSettings,
};

fn main() -> beamspec::Result<()> {
    let case = parse_case("ab")?;
    let geom = BeamGeometry::new(1.0)?;
    let modes = build_modes(case, &geom, 8)?;
    let coeffs = project(
        &InitialState {
            u0: Profile::Pluck {
                position: 0.5,
                height: 1.0,
            },
            v0: Profile::Zero,
        },
        &modes,
        &QuadratureSettings::for_mode_count(8),
    )?;
    let material = MaterialParams::from_sigma(1.0)?;

    let grid: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
    for t in [0.0, 0.02, 0.05] {
        let frame = evaluate_solution(&coeffs, &modes, &material, &grid, t)?;
        let energy = modal_energy(&coeffs, &modes, &material, t)?;
        println!("t = {t:.2}  energy = {energy:.6}");
        for (x, u) in frame.positions.iter().zip(&frame.displacement) {
            println!("  u({x:.3}) = {u:+.5}");
        }
    }
    Ok(())
}
