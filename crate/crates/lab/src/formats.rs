//! Text and JSON input formats, with line/column diagnostics.
//!
//! * Domain files: one order literal per line, `#` starts a comment. An
//!   optional `alternatives: a b c` line fixes the labels and their order;
//!   otherwise the labels are the sorted tokens of the first literal.
//! * Profile files: `count: order` per line, the count defaults to 1.
//! * Graph files: the vertex count on the first line, then one `u v` edge per
//!   line, 0-based.
//! * Winning-structure files: JSON, see [`parse_structure`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use condorcet_core::aggregation::{CoalitionFamily, WinningStructure};
use condorcet_core::{AlternativeSet, Domain, Error, Graph, LinearOrder, Profile};
use serde_json::Value;

/// An input error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Non-comment content of each line, with its line number and starting column.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let column = body.len() - body.trim_start().len() + 1;
        Some((i + 1, column, trimmed.trim_end()))
    })
}

/// Column of `needle` inside `content` (which starts at `column`), or `column`.
fn column_of(content: &str, column: usize, needle: &str) -> usize {
    content.find(needle).map_or(column, |off| column + content[..off].chars().count())
}

fn order_error(line: usize, column: usize, literal: &str, e: Error) -> ParseError {
    let col = match &e {
        Error::UnknownLabel(l) => column_of(literal, column, l),
        _ => column,
    };
    ParseError::new(line, col, e.to_string())
}

fn labels_directive(content: &str) -> Option<&str> {
    content.strip_prefix("alternatives:").map(str::trim)
}

fn alternatives_from(line: usize, column: usize, list: &str) -> Result<Arc<AlternativeSet>, ParseError> {
    let labels: Vec<&str> = list.split_whitespace().collect();
    AlternativeSet::new(labels).map(Arc::new).map_err(|e| ParseError::new(line, column, e.to_string()))
}

/// The orders of a domain file in file order, duplicates kept.
pub fn parse_orders(text: &str) -> Result<(Arc<AlternativeSet>, Vec<LinearOrder>), ParseError> {
    let mut alts: Option<Arc<AlternativeSet>> = None;
    let mut orders = Vec::new();
    for (line, column, content) in content_lines(text) {
        if let Some(list) = labels_directive(content) {
            if alts.is_some() || !orders.is_empty() {
                return Err(ParseError::new(line, column, "`alternatives:` must come first and only once"));
            }
            alts = Some(alternatives_from(line, column, list)?);
            continue;
        }
        let set = match &alts {
            Some(a) => a.clone(),
            None => {
                let inferred =
                    AlternativeSet::infer(content).map_err(|e| ParseError::new(line, column, e.to_string()))?;
                alts.insert(Arc::new(inferred)).clone()
            }
        };
        orders.push(set.parse_order(content).map_err(|e| order_error(line, column, content, e))?);
    }
    match alts {
        Some(a) if !orders.is_empty() => Ok((a, orders)),
        _ => Err(ParseError::new(1, 1, "no orders in domain file")),
    }
}

pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let (alts, orders) = parse_orders(text)?;
    Domain::new(alts, orders).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Parses a profile; labels come from `alts` when given (normally the domain's).
pub fn parse_profile(text: &str, alts: Option<Arc<AlternativeSet>>) -> Result<Profile, ParseError> {
    let mut alts = alts;
    let mut entries: Vec<(LinearOrder, u32)> = Vec::new();
    for (line, column, content) in content_lines(text) {
        let (count, literal, lit_col) = match content.split_once(':') {
            Some((c, rest)) => {
                let count: u32 = c
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(line, column, format!("bad voter count `{}`", c.trim())))?;
                let lit = rest.trim();
                (count, lit, column_of(content, column, lit))
            }
            None => (1, content, column),
        };
        if count == 0 {
            return Err(ParseError::new(line, column, "voter count must be positive"));
        }
        let set = match &alts {
            Some(a) => a.clone(),
            None => {
                let inferred =
                    AlternativeSet::infer(literal).map_err(|e| ParseError::new(line, lit_col, e.to_string()))?;
                alts.insert(Arc::new(inferred)).clone()
            }
        };
        let order = set.parse_order(literal).map_err(|e| order_error(line, lit_col, literal, e))?;
        entries.push((order, count));
    }
    if entries.is_empty() {
        return Err(ParseError::new(1, 1, "profile has no voters"));
    }
    Profile::new(entries).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, column, first) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty graph file"))?;
    let n: usize =
        first.parse().map_err(|_| ParseError::new(line, column, format!("expected a vertex count, found `{first}`")))?;
    let mut edges = Vec::new();
    for (line, column, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::new(line, column, "expected an edge `u v`"));
        }
        let mut ends = [0usize; 2];
        for (k, f) in fields.iter().enumerate() {
            let v: usize = f
                .parse()
                .map_err(|_| ParseError::new(line, column_of(content, column, f), format!("bad vertex `{f}`")))?;
            if v >= n {
                return Err(ParseError::new(
                    line,
                    column_of(content, column, f),
                    format!("vertex {v} out of range for {n} vertices"),
                ));
            }
            ends[k] = v;
        }
        if ends[0] == ends[1] {
            return Err(ParseError::new(line, column, "loops are not allowed"));
        }
        edges.push((ends[0], ends[1]));
    }
    Graph::new(n, edges).map_err(|e| ParseError::new(line, column, e.to_string()))
}

/// Line and column of the first occurrence of `"key"` in a JSON text.
fn locate_key(text: &str, key: &str) -> (usize, usize) {
    let quoted = format!("\"{key}\"");
    for (i, line) in text.lines().enumerate() {
        if let Some(off) = line.find(&quoted) {
            return (i + 1, line[..off].chars().count() + 1);
        }
    }
    (1, 1)
}

fn json_error(text: &str, key: &str, message: impl Into<String>) -> ParseError {
    let (line, column) = locate_key(text, key);
    ParseError::new(line, column, message)
}

/// Parses a winning structure over `alts`. Accepted shapes, voters 1-based:
///
/// * `{"voters": 3, "quota": {"ab": 2, "ba": 2, ...}}`
/// * `{"voters": 3, "minimal": {"ab": [[1, 2], [3]], ...}}`
/// * `{"voters": 3, "majority": true}` and `{"voters": 3, "dictator": 1}`
///
/// Every ordered pair needs an entry in the quota and minimal forms. `voters`
/// may be omitted when the caller supplies it.
pub fn parse_structure(
    text: &str,
    alts: &AlternativeSet,
    voters: Option<usize>,
) -> Result<WinningStructure, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| ParseError::new(1, 1, "structure must be a JSON object"))?;
    let declared = match obj.get("voters") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .filter(|&n| n >= 1)
                .ok_or_else(|| json_error(text, "voters", "`voters` must be a positive integer"))? as usize,
        ),
    };
    let voters = match (declared, voters) {
        (Some(a), Some(b)) if a != b => {
            return Err(json_error(text, "voters", format!("structure declares {a} voters but {b} are given")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(ParseError::new(1, 1, "the number of voters is not known; add `\"voters\"`")),
    };
    let n = alts.len();
    let known = ["voters", "quota", "minimal", "majority", "dictator"];
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(json_error(text, k, format!("unknown key `{k}`")));
    }
    let forms: Vec<&str> = ["quota", "minimal", "majority", "dictator"].into_iter().filter(|k| obj.contains_key(*k)).collect();
    if forms.len() != 1 {
        return Err(ParseError::new(1, 1, "give exactly one of `quota`, `minimal`, `majority`, `dictator`"));
    }
    let form = forms[0];
    let structural = |e: Error| json_error(text, form, e.to_string());
    match form {
        "majority" => WinningStructure::majority(voters, n).map_err(structural),
        "dictator" => {
            let i = obj["dictator"]
                .as_u64()
                .filter(|&i| i >= 1)
                .ok_or_else(|| json_error(text, "dictator", "`dictator` must be a voter number, starting at 1"))?;
            WinningStructure::dictatorship(voters, n, i as usize - 1).map_err(structural)
        }
        _ => {
            let table = obj[form]
                .as_object()
                .ok_or_else(|| json_error(text, form, format!("`{form}` must map pairs to entries")))?;
            let mut pairs = BTreeMap::new();
            for (key, entry) in table {
                let pair = alts.parse_pair(key).map_err(|e| json_error(text, key, e.to_string()))?;
                let family = if form == "quota" {
                    let q = entry
                        .as_u64()
                        .ok_or_else(|| json_error(text, key, format!("quota for `{key}` must be an integer")))?;
                    CoalitionFamily::Quota(q as u32)
                } else {
                    CoalitionFamily::minimal(coalitions(text, key, entry, voters)?)
                };
                if pairs.insert(pair, family).is_some() {
                    return Err(json_error(text, key, format!("pair `{key}` given twice")));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    if x != y && !pairs.contains_key(&(x, y)) {
                        return Err(json_error(
                            text,
                            form,
                            format!("no entry for pair `{}`", alts.format_pair(x, y)),
                        ));
                    }
                }
            }
            WinningStructure::from_pairs(voters, n, pairs).map_err(structural)
        }
    }
}

fn coalitions(text: &str, key: &str, entry: &Value, voters: usize) -> Result<Vec<u64>, ParseError> {
    let bad = || json_error(text, key, format!("`{key}` must be a list of voter lists"));
    let lists = entry.as_array().ok_or_else(bad)?;
    let mut out = Vec::new();
    for list in lists {
        let mut c = 0u64;
        for v in list.as_array().ok_or_else(bad)? {
            let i = v.as_u64().ok_or_else(bad)? as usize;
            if i == 0 || i > voters || i > 64 {
                return Err(json_error(text, key, format!("voter {i} is not among 1..={voters}")));
            }
            c |= 1 << (i - 1);
        }
        out.push(c);
    }
    Ok(out)
}

/// Writes a domain in the domain-file format. The `alternatives:` line is
/// only emitted when the labels could not be recovered from the first order.
pub fn format_domain(d: &Domain) -> String {
    let alts = d.alternatives();
    let mut out = String::new();
    let first = d.literal(0);
    let inferred = AlternativeSet::infer(&first).ok();
    if inferred.as_ref().map(|a| a.labels()) != Some(alts.labels()) {
        out.push_str("alternatives: ");
        out.push_str(&alts.labels().join(" "));
        out.push('\n');
    }
    for i in 0..d.len() {
        out.push_str(&d.literal(i));
        out.push('\n');
    }
    out
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_files() {
        let d = parse_domain("# D1\nabc\n  acb # second\n\ncab\ncba\n").unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(parse_domain(&format_domain(&d)).unwrap(), d);
        let e = parse_domain("abc\nabd\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_domain("abc\n  ab\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_domain("# nothing\n").is_err());
        let spaced = parse_domain("alternatives: x1 x2 x3\nx2 x1 x3\nx3 x2 x1\n").unwrap();
        assert_eq!(spaced.alternatives().labels(), ["x1", "x2", "x3"]);
        assert_eq!(parse_domain(&format_domain(&spaced)).unwrap(), spaced);
        let reordered = parse_domain("alternatives: c b a\nabc\n").unwrap();
        assert!(format_domain(&reordered).starts_with("alternatives: c b a"));
    }

    #[test]
    fn profile_files() {
        let d = parse_domain("abc\ncab\ncba\n").unwrap();
        let p = parse_profile("2: abc\ncab\n1 : cba\n", Some(d.alternatives().clone())).unwrap();
        assert_eq!(p.voter_count(), 4);
        let e = parse_profile("x: abc\n", None).unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_profile("abc\n0: cab\n", None).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_profile("abc\n3: abz\n", None).unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
    }

    #[test]
    fn graph_files() {
        let g = parse_graph("4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert!(g.is_cycle(4));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        let e = parse_graph("3\n0 1\n1 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert!(parse_graph("x\n").is_err());
        assert!(parse_graph("2\n0 0\n").is_err());
    }

    #[test]
    fn structure_files() {
        let alts = AlternativeSet::standard(3).unwrap();
        let maj = parse_structure(r#"{"voters": 3, "majority": true}"#, &alts, None).unwrap();
        assert_eq!(maj, WinningStructure::majority(3, 3).unwrap());
        let quota = r#"{"quota": {"ab": 2, "ba": 2, "ac": 2, "ca": 2, "bc": 2, "cb": 2}}"#;
        assert_eq!(parse_structure(quota, &alts, Some(3)).unwrap(), maj);
        let bad = "{\n  \"voters\": 3,\n  \"quota\": {\"ab\": 1, \"ba\": 1, \"ac\": 2, \"ca\": 2, \"bc\": 2, \"cb\": 2}\n}";
        let e = parse_structure(bad, &alts, None).unwrap_err();
        assert!(e.message.contains("properness"), "{e}");
        assert_eq!(e.line, 3);
        let missing = r#"{"voters": 3, "quota": {"ab": 2}}"#;
        assert!(parse_structure(missing, &alts, None).unwrap_err().message.contains("no entry"));
        let minimal = r#"{"voters": 2, "minimal": {"ab": [[1]], "ba": [[2]], "ac": [[1]], "ca": [[2]], "bc": [[1]], "cb": [[2]]}}"#;
        let e = parse_structure(minimal, &alts, None).unwrap_err();
        assert!(e.message.contains("properness"));
        let dict = r#"{"voters": 2, "minimal": {"ab": [[1]], "ba": [[2]]}}"#;
        assert!(parse_structure(dict, &AlternativeSet::standard(2).unwrap(), None).is_err());
        let dict = r#"{"voters": 2, "dictator": 2}"#;
        assert_eq!(
            parse_structure(dict, &alts, None).unwrap(),
            WinningStructure::dictatorship(2, 3, 1).unwrap()
        );
        let e = parse_structure("{\"voters\": 3,\n \"majority\": tru}", &alts, None).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_structure(r#"{"majority": true}"#, &alts, Some(4)).is_err());
    }
}
