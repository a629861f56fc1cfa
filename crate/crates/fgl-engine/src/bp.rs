//! Variable tables for BP_*-style rings.

use ehh2_core::ring::{RingError, Variable, VariableTable};

/// |v_i| = |t_i| = 2(p^i - 1).
pub fn gen_degree(p: u32, i: u32) -> i64 {
    2 * ((p as i64).pow(i) - 1)
}

/// v1..vm, t1..tk, then power-series variables of degree -2 (so that
/// F(x,y) is homogeneous of degree -2).
pub fn bp_table(p: u32, m: usize, k: usize, series: &[&str]) -> Result<VariableTable, RingError> {
    let mut vars = vec![];
    for i in 1..=m {
        vars.push(Variable::new(&format!("v{i}"), gen_degree(p, i as u32)));
    }
    for i in 1..=k {
        vars.push(Variable::new(&format!("t{i}"), gen_degree(p, i as u32)));
    }
    for s in series {
        vars.push(Variable::series(s, -2));
    }
    VariableTable::new(vars)
}

/// Largest m with p^m <= cap.
pub fn max_generator(p: u32, cap: i64) -> usize {
    let mut m = 0;
    while (p as i64).pow(m as u32 + 1) <= cap {
        m += 1;
    }
    m
}
