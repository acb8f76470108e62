//! Graphviz rendering of the subtree spanned by a few points.

use berkline::berk::Line;
use berkline::dot::export_dot;
use berkline::parse::parse_point;

fn main() -> berkline::Result<()> {
    let pts = ["pt(0)", "pt(t)", "pt(1)", "[t^2, b^-3]", "inf"]
        .iter()
        .map(|s| parse_point(s))
        .collect::<berkline::Result<Vec<_>>>()?;
    print!("{}", export_dot(&Line::default(), &pts)?);
    Ok(())
}
