//! Parse a run configuration, print its canonical form and run two of the
//! analyses on it.

use selfadjoint::cli::{bound_states_table, parse_config, r0scan_table};

fn main() -> selfadjoint::Result<()> {
    let cfg = parse_config(r#"{"model":{"type":"monopole","eg":0.5},"extension":{"diagonal_thetas":[0,1.5,-2,3]}}"#)?;
    let canonical = cfg.emit();
    print!("{canonical}");
    assert_eq!(parse_config(&canonical)?.emit(), canonical);

    let u = cfg.extension_matrix()?;
    print!("{}", bound_states_table(&u).to_csv());
    print!("{}", r0scan_table(&u, &[1e-1, 1e-2, 1e-3])?.to_csv());
    Ok(())
}
