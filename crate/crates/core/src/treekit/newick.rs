//! Newick I/O for rooted binary trees without branch lengths.
//!
//! Accepted grammar (ASCII whitespace between tokens is ignored):
//!
//! ```text
//! tree    := subtree ';'
//! subtree := name | '(' subtree (',' subtree)* ')'
//! name    := [A-Za-z0-9_]+
//! ```
//!
//! Every parenthesized group must have exactly two children.

use crate::error::{Error, Result};
use crate::treekit::{LabeledTopology, RawTree};

pub fn parse_newick(text: &str) -> Result<LabeledTopology> {
    let mut parser = Parser { bytes: text.as_bytes(), pos: 0 };
    parser.skip_ws();
    if parser.at_end() || parser.peek() == Some(b';') {
        return Err(Error::EmptyTree);
    }
    let raw = parser.subtree()?;
    parser.skip_ws();
    parser.expect(b';')?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.syntax("trailing input after `;`"));
    }
    LabeledTopology::from_raw(&raw)
}

/// Canonical Newick rendering; children appear in canonical order.
pub fn render_newick(t: &LabeledTopology) -> String {
    let mut out = String::with_capacity(4 * t.size());
    write_raw(&t.to_raw(), &mut out);
    out.push(';');
    out
}

fn write_raw(raw: &RawTree, out: &mut String) {
    match raw {
        RawTree::Leaf(name) => out.push_str(name),
        RawTree::Node(a, b) => {
            out.push('(');
            write_raw(a, out);
            out.push(',');
            write_raw(b, out);
            out.push(')');
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.syntax(format!(
                "expected `{}`, found `{}`",
                want as char,
                b as char
            ))),
            None => Err(self.syntax(format!("expected `{}`, found end of input", want as char))),
        }
    }

    fn subtree(&mut self) -> Result<RawTree> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = vec![self.subtree()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.subtree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b) => {
                            return Err(self.syntax(format!(
                                "expected `,` or `)`, found `{}`",
                                b as char
                            )))
                        }
                        None => return Err(self.syntax("unclosed `(`")),
                    }
                }
                self.skip_ws();
                if self.peek().is_some_and(is_name_byte) {
                    return Err(self.syntax("internal node labels are not supported"));
                }
                if children.len() != 2 {
                    return Err(Error::NonBinary {
                        position: open,
                        children: children.len(),
                    });
                }
                let b = children.pop().expect("two children");
                let a = children.pop().expect("two children");
                Ok(RawTree::node(a, b))
            }
            Some(b) if is_name_byte(b) => {
                let start = self.pos;
                while self.peek().is_some_and(is_name_byte) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("name bytes are ASCII")
                    .to_owned();
                Ok(RawTree::Leaf(name))
            }
            Some(b':') => Err(self.syntax("branch lengths are not supported")),
            Some(b) => Err(self.syntax(format!("unexpected `{}`", b as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}
