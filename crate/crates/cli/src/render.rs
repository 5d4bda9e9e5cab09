//! Aligned plain-text tables.

use matroid_depth::depth::{Step, Witness, WitnessNode};
use matroid_depth::matroid::elements;
use matroid_depth::Mask;

/// Left-aligned columns separated by two spaces, with a dashed rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn set(x: Mask) -> String {
    let items: Vec<String> = elements(x).map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// One line per recursion node, indented by depth.
pub fn witness_tree(w: &Witness) -> String {
    let mut out = format!("{} = {}{}\n", w.measure, w.value, if w.on_dual { " (steps on the dual)" } else { "" });
    node(&w.root, 1, &mut out);
    out
}

fn node(n: &WitnessNode, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let head = format!("{pad}{} value {}", set(n.ground), n.value);
    match &n.step {
        Step::Base => out.push_str(&format!("{head}: single element\n")),
        Step::Components { children } => {
            out.push_str(&format!("{head}: {} components, take the max\n", children.len()));
            for c in children {
                node(c, indent + 1, out);
            }
        }
        Step::Contract { elem, child } => {
            out.push_str(&format!("{head}: contract {elem}\n"));
            node(child, indent + 1, out);
        }
        Step::Delete { elem, child } => {
            out.push_str(&format!("{head}: delete {elem}\n"));
            node(child, indent + 1, out);
        }
        Step::Guts { a, b, lambda, left, right } => {
            out.push_str(&format!("{head}: guts contraction A={} B={} lambda={lambda}\n", set(*a), set(*b)));
            node(left, indent + 1, out);
            node(right, indent + 1, out);
        }
        Step::CStar { cut, child } => {
            out.push_str(&format!(
                "{head}: extend by a modular cut of {} flats, contract the new element\n",
                cut.len()
            ));
            node(child, indent + 1, out);
        }
        Step::DStar { cut, child } => {
            out.push_str(&format!(
                "{head}: coextend by a modular cut of {} flats, delete the new element\n",
                cut.len()
            ));
            node(child, indent + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(&["a", "value"], &[vec!["long".into(), "1".into()]]);
        assert_eq!(t, "a     value\n----  -----\nlong  1\n");
    }

    #[test]
    fn sets_print_sorted() {
        assert_eq!(set(0b1011), "{0,1,3}");
        assert_eq!(set(0), "{}");
    }
}
