//! Angular channels of the eg = 1/2 monopole and of an inverse-square well.

use selfadjoint::channels::{enumerate_channels, l_crit, singular_channels, ModelParams};

fn main() -> selfadjoint::Result<()> {
    let mono = ModelParams::monopole(0.5);
    println!("monopole eg = 1/2, j <= 2:");
    for ch in enumerate_channels(&mono, 2.0)? {
        println!("  {ch:<32} nu = {:.6}{}", ch.nu, if ch.is_singular() { "  singular" } else { "" });
    }
    println!("singular: {}", singular_channels(&mono, 1.0)?.len());

    for c in [-0.5, 0.0, 0.2] {
        let p = ModelParams::inverse_square(c);
        let s = singular_channels(&p, l_crit(c).ceil())?;
        println!("inverse square c = {c}: {} singular channel(s), nu = {:.6}", s.len(), s[0].nu);
    }
    Ok(())
}
