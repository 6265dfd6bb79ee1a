//! A small recursive-descent checker for the DOT language subset that
//! graphviz accepts: graphs, subgraphs, node/edge/attribute statements,
//! `ID = ID` assignments, attribute lists, and quoted/numeric/plain IDs.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Sym(char),
    Edge(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push(Tok::Id(s));
        } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            out.push(Tok::Edge(if chars[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else if "{}[];,=:".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            let numeric = c.is_ascii_digit() || c == '.' || c == '-';
            while i < chars.len() {
                let d = chars[i];
                let fits = if numeric { d.is_ascii_digit() || d == '.' || (i == start && d == '-') } else { d.is_ascii_alphanumeric() || d == '_' };
                if !fits {
                    break;
                }
                i += 1;
            }
            if i == start {
                return Err(format!("unexpected {c:?}"));
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    edge_op: &'static str,
    edges: usize,
    nodes: std::collections::BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), String> {
        match self.next() {
            Some(Tok::Sym(d)) if d == c => Ok(()),
            other => Err(format!("expected {c:?}, found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            other => Err(format!("expected ID, found {other:?}")),
        }
    }

    fn is_keyword(s: &str, kw: &str) -> bool {
        s.eq_ignore_ascii_case(kw)
    }

    fn attr_lists(&mut self) -> Result<(), String> {
        while self.peek() == Some(&Tok::Sym('[')) {
            self.next();
            while self.peek() != Some(&Tok::Sym(']')) {
                self.id()?;
                self.expect_sym('=')?;
                self.id()?;
                if matches!(self.peek(), Some(Tok::Sym(';')) | Some(Tok::Sym(','))) {
                    self.next();
                }
            }
            self.expect_sym(']')?;
        }
        Ok(())
    }

    fn node_id(&mut self) -> Result<String, String> {
        let id = self.id()?;
        if self.peek() == Some(&Tok::Sym(':')) {
            self.next();
            self.id()?;
        }
        Ok(id)
    }

    fn subgraph(&mut self) -> Result<(), String> {
        if let Some(Tok::Id(s)) = self.peek() {
            if Self::is_keyword(s, "subgraph") {
                self.next();
                if let Some(Tok::Id(_)) = self.peek() {
                    self.next();
                }
            }
        }
        self.expect_sym('{')?;
        self.stmt_list()?;
        self.expect_sym('}')
    }

    fn endpoint(&mut self) -> Result<(), String> {
        match self.peek() {
            Some(Tok::Sym('{')) => self.subgraph(),
            Some(Tok::Id(s)) if Self::is_keyword(s, "subgraph") => self.subgraph(),
            _ => {
                let id = self.node_id()?;
                self.nodes.insert(id);
                Ok(())
            }
        }
    }

    fn stmt(&mut self) -> Result<(), String> {
        if let Some(Tok::Id(s)) = self.peek() {
            let s = s.clone();
            if ["graph", "node", "edge"].iter().any(|k| Self::is_keyword(&s, k)) {
                self.next();
                if self.peek() != Some(&Tok::Sym('[')) {
                    return Err(format!("{s} requires an attribute list"));
                }
                return self.attr_lists();
            }
            if self.toks.get(self.pos + 1) == Some(&Tok::Sym('=')) {
                self.next();
                self.next();
                self.id()?;
                return Ok(());
            }
        }
        self.endpoint()?;
        while let Some(Tok::Edge(op)) = self.peek() {
            if *op != self.edge_op {
                return Err(format!("edge operator {op} in a graph using {}", self.edge_op));
            }
            self.next();
            self.endpoint()?;
            self.edges += 1;
        }
        self.attr_lists()
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::Sym('}')) | None) {
            self.stmt()?;
            if self.peek() == Some(&Tok::Sym(';')) {
                self.next();
            }
        }
        Ok(())
    }
}

/// Node and edge statement counts of a syntactically valid DOT graph.
#[derive(Debug)]
pub struct DotSummary {
    pub directed: bool,
    pub nodes: usize,
    pub edges: usize,
}

pub fn validate_dot(src: &str) -> Result<DotSummary, String> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        edge_op: "->",
        edges: 0,
        nodes: Default::default(),
    };
    if let Some(Tok::Id(s)) = p.peek() {
        if Parser::is_keyword(s, "strict") {
            p.next();
        }
    }
    let kind = p.id()?;
    let directed = if Parser::is_keyword(&kind, "digraph") {
        true
    } else if Parser::is_keyword(&kind, "graph") {
        false
    } else {
        return Err(format!("expected graph or digraph, found {kind:?}"));
    };
    p.edge_op = if directed { "->" } else { "--" };
    if let Some(Tok::Id(_)) = p.peek() {
        p.next();
    }
    p.expect_sym('{')?;
    p.stmt_list()?;
    p.expect_sym('}')?;
    if p.pos != p.toks.len() {
        return Err("trailing tokens after graph".into());
    }
    Ok(DotSummary {
        directed,
        nodes: p.nodes.len(),
        edges: p.edges,
    })
}

#[test]
fn validator_rejects_malformed_input() {
    assert!(validate_dot("digraph { a -> b; }").is_ok());
    assert!(validate_dot("graph g { a -- b [label=\"x\"]; }").is_ok());
    assert!(validate_dot("graph g { a -> b; }").is_err());
    assert!(validate_dot("digraph g { a -> ; }").is_err());
    assert!(validate_dot("digraph g { a [label=\"x]; }").is_err());
    assert!(validate_dot("digraph g { a -> b; ").is_err());
    assert!(validate_dot("tree g { }").is_err());
    assert!(validate_dot("digraph g { node [shape=box]; { rank=same; a; b; } }").is_ok());
}
