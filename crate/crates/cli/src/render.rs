//! Monospace grid diagrams.
//!
//! `.` free, `#` blocked, `S` start, goal cells show the uppercase first
//! letter of their model id (`!` when several models share the cell), and a
//! trace is drawn as `*` everywhere except the start. Row 0 comes first.

use std::collections::BTreeMap;

use ghap_core::{Cell, Scenario, Trace};

pub fn render(scenario: &Scenario, trace: Option<&Trace>) -> String {
    let hs = scenario.hypotheses();
    let grid = hs.grid();
    let mut goals: BTreeMap<Cell, Vec<&str>> = BTreeMap::new();
    let agent = scenario.agent();
    let extra = hs.model(agent.id()).is_none().then_some(agent);
    for m in hs.models().iter().chain(extra) {
        goals.entry(m.goal()).or_default().push(m.id());
    }

    let mut rows: Vec<Vec<char>> = (0..grid.height())
        .map(|r| {
            (0..grid.width())
                .map(|c| {
                    let cell = Cell::new(c, r);
                    if grid.is_blocked(cell) {
                        '#'
                    } else if let Some(ids) = goals.get(&cell) {
                        match ids.as_slice() {
                            [id] => id.chars().next().map_or('?', |ch| ch.to_ascii_uppercase()),
                            _ => '!',
                        }
                    } else {
                        '.'
                    }
                })
                .collect()
        })
        .collect();

    if let Some(t) = trace {
        for cell in t.cells(grid).into_iter().skip(1) {
            rows[cell.row as usize][cell.col as usize] = '*';
        }
    }
    let s = hs.start();
    rows[s.row as usize][s.col as usize] = 'S';

    let mut out = String::new();
    for row in rows {
        out.extend(row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghap_core::fixtures::{corridor_fixture, office_fixture};
    use ghap_core::{BeliefDistribution, GridModel, GridSpec, HypothesisSet, WeightProfile};

    #[test]
    fn office_layout() {
        let out = render(&office_fixture(), None);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.len() == 7));
        assert_eq!(lines[0], "...S...");
        assert_eq!(lines[5], "C.....M");
    }

    #[test]
    fn path_overlays_cells_but_keeps_start() {
        let s = office_fixture();
        let t = Trace::from_action_str(s.hypotheses().start(), "LLLDDDDD").unwrap();
        let out = render(&s, Some(&t));
        assert_eq!(out.lines().next(), Some("***S..."));
        assert_eq!(out.lines().last(), Some("*.....M"));
    }

    #[test]
    fn shared_goal_is_marked() {
        let out = render(&corridor_fixture(), None);
        assert_eq!(out, "S\n.\n.\n.\n.\n!\n");
    }

    #[test]
    fn two_by_two() {
        let g = GridSpec::open(2, 2).unwrap();
        let m = GridModel::builder("x", g, Cell::new(0, 0), Cell::new(0, 0))
            .build()
            .unwrap();
        let prior = BeliefDistribution::new([("x", 0.5), ("M0", 0.5)]).unwrap();
        let hs = HypothesisSet::new(vec![m.clone()], prior, None).unwrap();
        let s = Scenario::new(hs, m, WeightProfile::Uniform, None).unwrap();
        assert_eq!(render(&s, None), "S.\n..\n");
    }
}
