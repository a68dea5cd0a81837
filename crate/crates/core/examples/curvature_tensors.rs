//! Algebraic curvature tensors: construction, validation and contractions.

use einstein_residue::scalar::{int, rat};
use einstein_residue::RiemannTensor;

fn main() -> einstein_residue::Result<()> {
    let sphere = RiemannTensor::constant_curvature(4, &int(1));
    println!("unit curvature: Ric_11 = {}, s = {}", sphere.ricci()?[0][0], sphere.scalar()?);

    let p = vec![
        vec![int(1), rat(1, 2), int(0), int(0)],
        vec![rat(1, 2), int(-1), int(0), int(0)],
        vec![int(0), int(0), int(2), int(1)],
        vec![int(0), int(0), int(1), int(0)],
    ];
    let kn = RiemannTensor::kulkarni_nomizu_square(&p);
    println!("Kulkarni-Nomizu square valid: {}, s = {}", kn.validate().is_ok(), kn.scalar()?);

    let mut broken = RiemannTensor::zero(4);
    broken.set(0, 1, 2, 3, int(1));
    for v in broken.validate().unwrap_err().iter().take(3) {
        println!("violation: {v}");
    }
    Ok(())
}
