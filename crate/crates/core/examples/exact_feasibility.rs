//! Exact feasibility of small linear systems, with strict and equality rows.

use zonelab::exact::{feasible, format_point, int, ratio, vector, LinearConstraint, Relation};

fn main() -> zonelab::error::Result<()> {
    // x + y = 1, x > 1/3, y > 1/3: a relatively open segment.
    let segment = [
        LinearConstraint::eq(vector(&[1, 1]), int(1)),
        LinearConstraint::gt(vector(&[1, 0]), ratio(1, 3)),
        LinearConstraint::gt(vector(&[0, 1]), ratio(1, 3)),
    ];
    match feasible(&segment, 2)?.witness() {
        Some(x) => println!("segment: feasible at {}", format_point(x)),
        None => println!("segment: infeasible"),
    }

    // Tighten both bounds to 1/2 and the strict rows leave nothing.
    let empty = [
        LinearConstraint::eq(vector(&[1, 1]), int(1)),
        LinearConstraint::gt(vector(&[1, 0]), ratio(1, 2)),
        LinearConstraint::gt(vector(&[0, 1]), ratio(1, 2)),
    ];
    println!(
        "tightened: feasible = {}",
        feasible(&empty, 2)?.is_feasible()
    );

    // With non-strict rows the single point (1/2, 1/2) survives.
    let closed = [
        empty[0].clone(),
        empty[1].with_relation(Relation::Ge),
        empty[2].with_relation(Relation::Ge),
    ];
    println!(
        "closed: witness {}",
        format_point(feasible(&closed, 2)?.witness().unwrap_or(&[]))
    );
    Ok(())
}
