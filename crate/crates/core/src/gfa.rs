//! Blunt GFA 1 ingestion and the text formats of snarl and superbubble
//! reports.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::Error;
use crate::graph::{BidirectedGraph, DirectedGraph, Incidence, Sign, VertexId};
use crate::snarls::SnarlRepresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub name: String,
    /// Sequence length when the sequence is present.
    pub length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub from: String,
    pub from_orient: Sign,
    pub to: String,
    pub to_orient: Sign,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GfaDocument {
    pub segments: Vec<Segment>,
    pub links: Vec<Link>,
    /// Records other than `S` and `L`, skipped.
    pub ignored: usize,
    /// Comment lines starting with `#>`, with that prefix and surrounding
    /// whitespace stripped.
    pub annotations: Vec<String>,
}

fn orient(field: &str, line: usize) -> Result<Sign, Error> {
    match field {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(Error::Parse { line, message: format!("orientation must be '+' or '-', found '{field}'") }),
    }
}

impl GfaDocument {
    pub fn parse(text: &str) -> Result<GfaDocument, Error> {
        let mut doc = GfaDocument::default();
        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_end_matches('\r');
            if let Some(rest) = trimmed.strip_prefix("#>") {
                doc.annotations.push(rest.trim().to_string());
                continue;
            }
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields[0] {
                "S" => {
                    if fields.len() < 3 {
                        return Err(Error::Parse { line, message: "segment line needs a name and a sequence".into() });
                    }
                    let name = fields[1].to_string();
                    if index.contains_key(&name) {
                        return Err(Error::Parse { line, message: format!("segment '{name}' declared twice") });
                    }
                    let length = (fields[2] != "*").then(|| fields[2].len());
                    index.insert(name.clone(), doc.segments.len());
                    doc.segments.push(Segment { name, length });
                }
                "L" => {
                    if fields.len() < 6 {
                        return Err(Error::Parse {
                            line,
                            message: "link line needs from, orientation, to, orientation and overlap".into(),
                        });
                    }
                    let from_orient = orient(fields[2], line)?;
                    let to_orient = orient(fields[4], line)?;
                    if fields[5] != "*" && fields[5] != "0M" {
                        return Err(Error::NotBlunt { line, overlap: fields[5].to_string() });
                    }
                    doc.links.push(Link {
                        from: fields[1].to_string(),
                        from_orient,
                        to: fields[3].to_string(),
                        to_orient,
                        line,
                    });
                }
                _ => doc.ignored += 1,
            }
        }
        for link in &doc.links {
            for name in [&link.from, &link.to] {
                if !index.contains_key(name) {
                    return Err(Error::UndeclaredSegment { line: link.line, name: name.clone() });
                }
            }
        }
        Ok(doc)
    }

    fn ids(&self) -> HashMap<&str, VertexId> {
        self.segments.iter().enumerate().map(|(i, s)| (s.name.as_str(), i as VertexId)).collect()
    }

    fn names(&self) -> Vec<String> {
        self.segments.iter().map(|s| s.name.clone()).collect()
    }

    /// Link `a oa b ob` becomes `{a d_a, b d_b}` with `d_a = +` iff `oa = +`
    /// and `d_b = -` iff `ob = +`: the end of `a` meets the start of `b`.
    pub fn to_bidirected(&self) -> BidirectedGraph {
        let ids = self.ids();
        let mut g = BidirectedGraph::with_names(self.names());
        for l in &self.links {
            let a = Incidence::new(ids[l.from.as_str()], l.from_orient);
            let b = Incidence::new(ids[l.to.as_str()], !l.to_orient);
            g.add_edge(a, b);
        }
        g
    }

    /// One arc per `+`/`+` link; any other orientation is an error.
    pub fn to_directed(&self) -> Result<DirectedGraph, Error> {
        let ids = self.ids();
        let mut g = DirectedGraph::with_names(self.names());
        for l in &self.links {
            if l.from_orient != Sign::Plus || l.to_orient != Sign::Plus {
                return Err(Error::NotDirected { line: l.line });
            }
            g.add_arc(ids[l.from.as_str()], ids[l.to.as_str()]);
        }
        Ok(g)
    }
}

/// GFA text for a bidirected graph, inverse to [`GfaDocument::to_bidirected`].
pub fn write_gfa(g: &BidirectedGraph) -> String {
    let mut out = String::new();
    for name in g.names() {
        let _ = writeln!(out, "S\t{name}\t*");
    }
    for &[a, b] in g.edges() {
        let _ = writeln!(out, "L\t{}\t{}\t{}\t{}\t0M", g.name(a.vertex), a.sign, g.name(b.vertex), !b.sign);
    }
    out
}

/// GFA text for a directed graph with `+`/`+` links.
pub fn write_gfa_directed(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for name in g.names() {
        let _ = writeln!(out, "S\t{name}\t*");
    }
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "L\t{}\t+\t{}\t+\t0M", g.name(u), g.name(v));
    }
    out
}

/// An incidence by vertex name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamedIncidence {
    pub name: String,
    pub sign: Sign,
}

impl NamedIncidence {
    fn of(i: Incidence, names: &[String]) -> Self {
        NamedIncidence { name: names[i.vertex as usize].clone(), sign: i.sign }
    }

    fn parse(token: &str, line: usize) -> Result<Self, Error> {
        let sign = token.chars().last().and_then(Sign::from_char);
        match sign {
            Some(sign) if token.len() > 1 => Ok(NamedIncidence { name: token[..token.len() - 1].to_string(), sign }),
            _ => Err(Error::Parse { line, message: format!("bad incidence '{token}'") }),
        }
    }
}

impl std::fmt::Display for NamedIncidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.name, self.sign)
    }
}

fn ordered<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Snarl representation by vertex names, in canonical order: incidences
/// within a tip set sorted, tip sets sorted, pairs ordered and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SnarlReport {
    pub tip_sets: Vec<Vec<NamedIncidence>>,
    pub pairs: Vec<(NamedIncidence, NamedIncidence)>,
}

impl SnarlReport {
    pub fn new(tip_sets: Vec<Vec<NamedIncidence>>, pairs: Vec<(NamedIncidence, NamedIncidence)>) -> Self {
        let mut tip_sets: Vec<Vec<NamedIncidence>> = tip_sets
            .into_iter()
            .map(|mut t| {
                t.sort();
                t
            })
            .collect();
        tip_sets.sort();
        let pairs: BTreeSet<_> = pairs.into_iter().map(|(a, b)| ordered(a, b)).collect();
        SnarlReport { tip_sets, pairs: pairs.into_iter().collect() }
    }

    pub fn from_representation(rep: &SnarlRepresentation, names: &[String]) -> Self {
        let tips = rep.tip_sets.iter().map(|t| t.iter().map(|&i| NamedIncidence::of(i, names)).collect()).collect();
        let pairs =
            rep.pairs.iter().map(|&(a, b)| (NamedIncidence::of(a, names), NamedIncidence::of(b, names))).collect();
        SnarlReport::new(tips, pairs)
    }

    /// Every snarl as an ordered pair, tip-set pairs included.
    pub fn enumerate_pairs(&self) -> BTreeSet<(NamedIncidence, NamedIncidence)> {
        let mut out = BTreeSet::new();
        for t in &self.tip_sets {
            for (i, a) in t.iter().enumerate() {
                for b in &t[i + 1..] {
                    out.insert(ordered(a.clone(), b.clone()));
                }
            }
        }
        out.extend(self.pairs.iter().cloned());
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.tip_sets.iter().enumerate() {
            let _ = write!(out, "T {}", k + 1);
            for i in t {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
        }
        for (a, b) in &self.pairs {
            let _ = writeln!(out, "S {a} {b}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<SnarlReport, Error> {
        let mut tips = Vec::new();
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            match fields.first() {
                None => continue,
                Some(&"T") => {
                    if fields.len() < 3 || fields[1].parse::<usize>().is_err() {
                        return Err(Error::Parse { line, message: "tip line is 'T <k> <incidence>...'".into() });
                    }
                    let set = fields[2..].iter().map(|f| NamedIncidence::parse(f, line)).collect::<Result<Vec<_>, _>>()?;
                    tips.push(set);
                }
                Some(&"S") => {
                    if fields.len() != 3 {
                        return Err(Error::Parse { line, message: "pair line is 'S <incidence> <incidence>'".into() });
                    }
                    pairs.push((NamedIncidence::parse(fields[1], line)?, NamedIncidence::parse(fields[2], line)?));
                }
                Some(other) => {
                    return Err(Error::Parse { line, message: format!("unknown report record '{other}'") });
                }
            }
        }
        Ok(SnarlReport::new(tips, pairs))
    }
}

/// Superbubbles by name, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperbubbleReport {
    pub pairs: Vec<(String, String)>,
}

impl SuperbubbleReport {
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        let set: BTreeSet<_> = pairs.into_iter().collect();
        SuperbubbleReport { pairs: set.into_iter().collect() }
    }

    pub fn from_pairs(pairs: &[(VertexId, VertexId)], names: &[String]) -> Self {
        Self::new(pairs.iter().map(|&(s, t)| (names[s as usize].clone(), names[t as usize].clone())))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, t) in &self.pairs {
            let _ = writeln!(out, "{s} {t}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<SuperbubbleReport, Error> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let fields: Vec<&str> = raw.split_whitespace().collect();
            match fields.len() {
                0 => {}
                2 => pairs.push((fields[0].to_string(), fields[1].to_string())),
                _ => return Err(Error::Parse { line: i + 1, message: "superbubble line is '<entrance> <exit>'".into() }),
            }
        }
        Ok(SuperbubbleReport::new(pairs))
    }
}
