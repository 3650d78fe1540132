//! Text forms: `l` is a leaf, `(t1 ... tk)` a node; a forest is `[t1 t2 ...]`.
//! Whitespace is insignificant and commas may separate forest entries.

use std::str::FromStr;

use super::{Arity, Forest, ForestError, Tree};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() || c == ',' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ForestError {
        ForestError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ForestError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ForestError> {
        match self.peek() {
            None => Ok(()),
            Some(x) => Err(self.error(format!("unexpected trailing `{x}`"))),
        }
    }

    pub(crate) fn tree(&mut self) -> Result<Tree, ForestError> {
        match self.peek() {
            Some('l') => {
                self.pos += 1;
                Ok(Tree::Leaf)
            }
            Some('(') => {
                self.pos += 1;
                let mut children = Vec::new();
                while self.peek() != Some(')') {
                    if self.peek().is_none() {
                        return Err(self.error("unclosed `(`"));
                    }
                    children.push(self.tree()?);
                }
                self.pos += 1;
                if children.len() < 2 {
                    return Err(self.error("a node needs at least two children"));
                }
                Ok(Tree::Node(children))
            }
            Some(x) => Err(self.error(format!("expected a tree, found `{x}`"))),
            None => Err(self.error("expected a tree, found end of input")),
        }
    }

    pub(crate) fn forest_trees(&mut self) -> Result<Vec<Tree>, ForestError> {
        self.expect('[')?;
        let mut trees = Vec::new();
        while self.peek() != Some(']') {
            if self.peek().is_none() {
                return Err(self.error("unclosed `[`"));
            }
            trees.push(self.tree()?);
        }
        self.pos += 1;
        Ok(trees)
    }
}

/// The arity used by the nodes of `trees`, or `None` if all are leaves.
pub(crate) fn infer_arity<'a>(
    trees: impl IntoIterator<Item = &'a Tree>,
) -> Result<Option<Arity>, ForestError> {
    let mut found: Option<Arity> = None;
    for t in trees {
        let Some(k) = t.root_arity() else {
            continue;
        };
        let k = Arity::new(k)?;
        match found {
            None => found = Some(k),
            Some(a) => a.expect(k)?,
        }
        t.check_arity(found.unwrap())?;
    }
    Ok(found)
}

impl FromStr for Tree {
    type Err = ForestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let t = c.tree()?;
        c.finish()?;
        infer_arity([&t])?;
        Ok(t)
    }
}

impl Forest {
    /// Parses a forest whose trees must all have the given arity.
    pub fn parse_with_arity(s: &str, arity: Arity) -> Result<Forest, ForestError> {
        let mut c = Cursor::new(s);
        let trees = c.forest_trees()?;
        c.finish()?;
        Forest::new(arity, trees)
    }
}

/// Infers the arity from the nodes present; a forest of bare leaves is
/// taken to be binary.
impl FromStr for Forest {
    type Err = ForestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let trees = c.forest_trees()?;
        c.finish()?;
        let arity = infer_arity(&trees)?.unwrap_or_default();
        Ok(Forest::from_trees_unchecked(arity, trees))
    }
}
