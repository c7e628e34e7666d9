//! Angular-momentum mixing: diagonal U keeps channels apart, a channel swap
//! feeds the singular solution of one channel from another.

use num_complex::Complex64;
use selfadjoint::channels::ModelParams;
use selfadjoint::extensions::{mixing_matrix, ExtensionMatrix};
use selfadjoint::linalg::CMatrix;

fn show(name: &str, u: &ExtensionMatrix) -> selfadjoint::Result<()> {
    let m = mixing_matrix(u, 1.0)?;
    println!("{name}: |A_S[channel, source]| at E = mu (condition {:.2e})", m.condition);
    for ch in 0..u.dim() {
        let row: Vec<String> = (0..u.dim()).map(|s| format!("{:10.3e}", m.a_s[(ch, s)].norm())).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}

fn main() -> selfadjoint::Result<()> {
    let p = ModelParams::monopole(0.5);
    show("diagonal", &ExtensionMatrix::diagonal(p, &[0.3, -1.0, 2.0, 0.0])?)?;

    let one = Complex64::new(1.0, 0.0);
    let mut swap = CMatrix::zeros(4, 4);
    swap[(0, 1)] = one;
    swap[(1, 0)] = one;
    swap[(2, 2)] = one;
    swap[(3, 3)] = one;
    show("swap 0 <-> 1", &ExtensionMatrix::new(p, swap, 1e-12)?)
}
