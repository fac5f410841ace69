use super::Alignment;

struct Span {
    row: usize,
    lo: usize,
    hi: usize,
    width: usize,
    children: Vec<Span>,
}

impl Span {
    fn contains(&self, other: &Span) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Bracketed constituent rendering over the New symbols.
///
/// Each Old row becomes `id( ... )` around the New positions that fall
/// between its first and last column. Rows are nested by containment; a row
/// whose interval crosses an enclosing one is appended as ` | id( ... )`.
/// Rows that span no New symbol are left out.
pub fn parse_render(al: &Alignment) -> String {
    let new_cols = al.row_columns(0);
    let new_syms: Vec<String> = al.new_row().symbols().iter().map(|s| s.to_string()).collect();

    let mut spans = Vec::new();
    for row in 1..al.row_count() {
        let cols = al.row_columns(row);
        let (first, last) = (cols[0], cols[cols.len() - 1]);
        let inside: Vec<usize> = (0..new_cols.len()).filter(|&p| (first..=last).contains(&new_cols[p])).collect();
        if let (Some(&lo), Some(&hi)) = (inside.first(), inside.last()) {
            spans.push(Span { row, lo, hi, width: last - first, children: Vec::new() });
        }
    }
    spans.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.hi.cmp(&a.hi)).then(b.width.cmp(&a.width)).then(a.row.cmp(&b.row)));

    let mut roots: Vec<Span> = Vec::new();
    let mut crossing: Vec<Span> = Vec::new();
    for span in spans {
        match insert(&mut roots, span) {
            Ok(()) => {}
            Err(span) => crossing.push(span),
        }
    }

    let id = |row: usize| al.row(row).id().to_owned();
    let mut out = Vec::new();
    render_level(&roots, 0, new_syms.len(), &new_syms, &id, &mut out);
    let mut text = out.join(" ");
    for span in &crossing {
        let mut inner = Vec::new();
        render_span(span, &new_syms, &id, &mut inner);
        text.push_str(" | ");
        text.push_str(&inner.join(" "));
    }
    text
}

/// Places `span` under the deepest node that contains it. Spans arrive
/// sorted so that every container precedes what it contains.
fn insert(level: &mut Vec<Span>, span: Span) -> Result<(), Span> {
    match level.last_mut() {
        Some(last) if last.contains(&span) => insert(&mut last.children, span),
        Some(last) if span.lo <= last.hi => Err(span),
        _ => {
            level.push(span);
            Ok(())
        }
    }
}

fn render_level(
    spans: &[Span],
    lo: usize,
    end: usize,
    syms: &[String],
    id: &dyn Fn(usize) -> String,
    out: &mut Vec<String>,
) {
    let mut pos = lo;
    for span in spans {
        out.extend(syms[pos..span.lo].iter().cloned());
        render_span(span, syms, id, out);
        pos = span.hi + 1;
    }
    if pos < end {
        out.extend(syms[pos..end].iter().cloned());
    }
}

fn render_span(span: &Span, syms: &[String], id: &dyn Fn(usize) -> String, out: &mut Vec<String>) {
    out.push(format!("{}(", id(span.row)));
    render_level(&span.children, span.lo, span.hi + 1, syms, id, out);
    out.push(")".into());
}

/// One line per column: index, symbol and the ids of the rows it holds.
pub fn column_dump(al: &Alignment) -> String {
    let mut out = String::new();
    for (k, col) in al.columns().iter().enumerate() {
        let ids: Vec<&str> = col.cells.iter().map(|c| al.row(c.row).id()).collect();
        out.push_str(&format!("{k} {} {}\n", col.symbol, ids.join(",")));
    }
    out
}

/// Rows drawn one per line with symbols under their column, New first.
pub fn grid(al: &Alignment) -> String {
    let widths: Vec<usize> = al.columns().iter().map(|c| c.symbol.as_ref().chars().count()).collect();
    let label_width = (0..al.row_count()).map(|r| al.row(r).id().chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for row in 0..al.row_count() {
        let mut line = format!("{:<label_width$} |", al.row(row).id());
        for (col, w) in al.columns().iter().zip(&widths) {
            let text = if col.has_row(row) { col.symbol.as_ref() } else { "" };
            line.push_str(&format!(" {text:<w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
