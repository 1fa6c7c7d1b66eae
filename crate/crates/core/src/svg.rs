//! A very small SVG writer: rectangles, lines and text, integer
//! coordinates only.
//!
//! Charts emitted by this crate are golden-file tested byte for byte, so
//! the writer deliberately avoids anything whose formatting could drift —
//! floating-point coordinates, external fonts, libraries. Callers round
//! to pixels themselves; text content is XML-escaped here.

/// Escape the five XML-special characters.
pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

pub struct SvgBuilder {
    width: i64,
    height: i64,
    body: String,
}

impl SvgBuilder {
    pub fn new(width: i64, height: i64) -> Self {
        Self { width, height, body: String::new() }
    }

    pub fn rect(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str) {
        self.body.push_str(&format!(
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"{fill}\"/>\n"
        ));
    }

    pub fn rect_outlined(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str, stroke: &str) {
        self.body.push_str(&format!(
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"{fill}\" stroke=\"{stroke}\"/>\n"
        ));
    }

    pub fn line(&mut self, x1: i64, y1: i64, x2: i64, y2: i64, stroke: &str) {
        self.body.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{stroke}\"/>\n"
        ));
    }

    /// `anchor` is an SVG text-anchor value: start, middle or end.
    pub fn text(&mut self, x: i64, y: i64, size: i64, anchor: &str, fill: &str, content: &str) {
        self.body.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" font-size=\"{size}\" text-anchor=\"{anchor}\" \
             fill=\"{fill}\" font-family=\"monospace\">{}</text>\n",
            escape_xml(content)
        ));
    }

    /// Text rotated by `degrees` around its own anchor point.
    #[allow(clippy::too_many_arguments)]
    pub fn text_rotated(
        &mut self,
        x: i64,
        y: i64,
        size: i64,
        anchor: &str,
        fill: &str,
        degrees: i64,
        content: &str,
    ) {
        self.body.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" font-size=\"{size}\" text-anchor=\"{anchor}\" \
             fill=\"{fill}\" font-family=\"monospace\" transform=\"rotate({degrees} {x} {y})\">{}</text>\n",
            escape_xml(content)
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
             viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}
