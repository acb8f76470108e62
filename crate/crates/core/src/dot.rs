//! Graphviz export of the finite subtree spanned by a set of points.

use std::collections::HashSet;
use std::fmt::Write;

use crate::berk::{BerkPoint, Line};
use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 1000;

/// The spanned subtree: vertices sorted by diameter, each edge pointing from
/// a vertex to its immediate ancestor.
#[derive(Clone, Debug)]
pub struct SpannedTree {
    pub nodes: Vec<BerkPoint>,
    pub edges: Vec<(usize, usize)>,
}

/// Inputs plus all pairwise joins, deduplicated, with parent edges.
pub fn spanned_tree(line: &Line, points: &[BerkPoint]) -> Result<SpannedTree> {
    if points.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(points.len()));
    }
    let mut nodes: Vec<BerkPoint> = Vec::new();
    let mut keys: HashSet<String> = HashSet::new();
    let mut add = |p: BerkPoint, nodes: &mut Vec<BerkPoint>| -> Result<()> {
        if let BerkPoint::Type4(_) = p {
            for q in nodes.iter() {
                if line.same_point(&p, q)? {
                    return Ok(());
                }
            }
        }
        if keys.insert(p.to_string()) {
            nodes.push(p);
        }
        Ok(())
    };
    for p in points {
        add(p.clone(), &mut nodes)?;
    }
    let inputs = nodes.clone();
    for i in 0..inputs.len() {
        for j in i + 1..inputs.len() {
            add(line.join(&inputs[i], &inputs[j])?, &mut nodes)?;
        }
    }
    let labels: Vec<String> = nodes.iter().map(|p| p.to_string()).collect();
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        nodes[a]
            .diam()
            .cmp(&nodes[b].diam())
            .then_with(|| labels[a].cmp(&labels[b]))
    });
    let nodes: Vec<BerkPoint> = order.into_iter().map(|i| nodes[i].clone()).collect();

    let mut edges = Vec::new();
    for (i, p) in nodes.iter().enumerate() {
        let mut parent: Option<usize> = None;
        for (j, q) in nodes.iter().enumerate() {
            if i == j || !line.leq(p, q)? || line.same_point(p, q)? {
                continue;
            }
            if parent.is_none_or(|k| q.diam() < nodes[k].diam()) {
                parent = Some(j);
            }
        }
        if let Some(j) = parent {
            edges.push((i, j));
        }
    }
    Ok(SpannedTree { nodes, edges })
}

/// Renders the spanned subtree as a `digraph`. Edge labels give the exact
/// path length and a decimal approximation.
pub fn export_dot(line: &Line, points: &[BerkPoint]) -> Result<String> {
    let tree = spanned_tree(line, points)?;
    let mut out = String::from("digraph berkline {\n");
    for (i, p) in tree.nodes.iter().enumerate() {
        writeln!(out, "  n{} [label=\"{}\"];", i, p).unwrap();
    }
    for &(i, j) in &tree.edges {
        let (a, b) = (&tree.nodes[i], &tree.nodes[j]);
        let label = if matches!(b, BerkPoint::Infinity) {
            "inf".to_string()
        } else {
            let d = line.delta(a, b)?;
            format!("{} ({})", d, d.approx(6))
        };
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", i, j, label).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_point;

    fn pts(xs: &[&str]) -> Vec<BerkPoint> {
        xs.iter().map(|s| parse_point(s).unwrap()).collect()
    }

    #[test]
    fn four_points() {
        let line = Line::default();
        let t = spanned_tree(&line, &pts(&["pt(0)", "pt(t)", "pt(1)", "inf"])).unwrap();
        assert_eq!(t.nodes.len(), 6);
        assert_eq!(t.edges.len(), 5);
        let dot = export_dot(&line, &pts(&["pt(0)", "pt(t)", "pt(1)", "inf"])).unwrap();
        assert!(dot.contains("[label=\"[0, b^-1]\"]"));
        assert!(dot.contains("[label=\"[0, b^0]\"]"));
    }

    #[test]
    fn single_point_and_infinity_leg() {
        let line = Line::default();
        let t = spanned_tree(&line, &pts(&["[t, b^-2]"])).unwrap();
        assert_eq!((t.nodes.len(), t.edges.len()), (1, 0));
        let t = spanned_tree(&line, &pts(&["pt(0)", "inf"])).unwrap();
        assert_eq!(t.edges, vec![(0, 1)]);
    }

    #[test]
    fn too_many() {
        let p = vec![BerkPoint::gauss(); MAX_POINTS + 1];
        assert_eq!(
            spanned_tree(&Line::default(), &p).unwrap_err(),
            Error::TooManyPoints(1001)
        );
    }
}
