//! Normalised deficiency vectors: full-space norms by quadrature and the
//! closed-form tail norm on [r0, inf).

use selfadjoint::channels::ModelParams;
use selfadjoint::extensions::{extension_channels, DeficiencySign, DeficiencyVector};

fn main() -> selfadjoint::Result<()> {
    let params = ModelParams::monopole(0.5);
    for ch in extension_channels(&params)? {
        for sign in [DeficiencySign::Plus, DeficiencySign::Minus] {
            let v = DeficiencyVector::new(ch, sign, &params)?;
            println!(
                "{ch:<32} {sign:?}: N = {:.12}, int|phi|^2 = {:.12}, tail from r0 = 0.1: {:.12}",
                v.norm,
                v.norm_quadrature(40.0)?,
                v.norm_from(0.1)?
            );
        }
    }
    Ok(())
}
