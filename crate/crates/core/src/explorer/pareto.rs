use std::cmp::Ordering;

use super::DesignPoint;

/// Non-dominated flags for maximisation of both coordinates. A point is
/// dominated when another is at least as good in both and strictly better in
/// one; exact duplicates do not dominate each other.
pub fn non_dominated(objectives: &[(f64, f64)]) -> Vec<bool> {
    let mut order: Vec<usize> = (0..objectives.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, da) = objectives[a];
        let (fb, db) = objectives[b];
        fb.total_cmp(&fa).then(db.total_cmp(&da))
    });

    let mut flags = vec![false; objectives.len()];
    // best second objective among points with a strictly larger first one
    let mut best_prev = f64::NEG_INFINITY;
    let mut i = 0;
    while i < order.len() {
        let f = objectives[order[i]].0;
        let group_end = order[i..]
            .iter()
            .position(|&k| objectives[k].0.total_cmp(&f) != Ordering::Equal)
            .map_or(order.len(), |p| i + p);
        let group_max = objectives[order[i]].1;
        for &k in &order[i..group_end] {
            let d = objectives[k].1;
            flags[k] = d == group_max && d > best_prev;
        }
        best_prev = best_prev.max(group_max);
        i = group_end;
    }
    flags
}

/// Sets `pareto` on every feasible point that is non-dominated in
/// (|F_blocked|, |δ_free|) among the feasible points. Returns the front size.
pub fn mark_pareto(points: &mut [DesignPoint]) -> usize {
    let feasible: Vec<usize> = (0..points.len()).filter(|&i| points[i].feasible).collect();
    let objectives: Vec<(f64, f64)> = feasible
        .iter()
        .map(|&i| (points[i].blocked_force(), points[i].free_deflection()))
        .collect();
    for p in points.iter_mut() {
        p.pareto = false;
    }
    let flags = non_dominated(&objectives);
    for (&i, &on_front) in feasible.iter().zip(&flags) {
        points[i].pareto = on_front;
    }
    flags.iter().filter(|&&f| f).count()
}

/// Front members sorted by blocked force, largest first. Empty when no point
/// is feasible.
pub fn pareto_front(points: &[DesignPoint]) -> Vec<DesignPoint> {
    let mut marked = points.to_vec();
    mark_pareto(&mut marked);
    let mut front: Vec<DesignPoint> = marked.into_iter().filter(|p| p.pareto).collect();
    front.sort_by(|a, b| {
        b.blocked_force()
            .total_cmp(&a.blocked_force())
            .then(b.free_deflection().total_cmp(&a.free_deflection()))
            .then(a.index.cmp(&b.index))
    });
    front
}
