//! Tab-separated graph and community files.
//!
//! A graph prefix `p` names three files:
//!
//! * `p.nodes.tsv`: `id<TAB>name`
//! * `p.edges.tsv`: `id<TAB>id<TAB>weight`, one line per undirected edge
//! * `p.skills.tsv`: `id<TAB>skill skill ...`
//!
//! Communities live in their own file, one per line:
//! `name<TAB>parent-or-"-"<TAB>comma-separated-ids`.
//!
//! All files are UTF-8 and LF-terminated. Writers emit rows in ascending id
//! order so identical graphs produce byte-identical files.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{Community, ExpertGraph, ExpertId, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GraphPaths {
    pub nodes: PathBuf,
    pub edges: PathBuf,
    pub skills: PathBuf,
}

impl GraphPaths {
    pub fn new(prefix: impl AsRef<Path>) -> Self {
        let p = prefix.as_ref().as_os_str().to_owned();
        let with = |ext: &str| {
            let mut s = p.clone();
            s.push(ext);
            PathBuf::from(s)
        };
        GraphPaths {
            nodes: with(".nodes.tsv"),
            edges: with(".edges.tsv"),
            skills: with(".skills.tsv"),
        }
    }
}

/// Decimal rendering with at least six significant digits.
pub fn format_weight(w: f64) -> String {
    let decimals = if w == 0.0 {
        6
    } else {
        let magnitude = w.abs().log10().floor() as i32;
        (5 - magnitude).clamp(0, 17) as usize
    };
    format!("{w:.decimals$}")
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_owned(),
        line,
        message: message.into(),
    }
}

fn check_field(value: &str, what: &str) -> Result<()> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(Error::InvalidArgument(format!(
            "{what} {value:?} contains a tab or newline"
        )));
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_graph(g: &ExpertGraph, prefix: impl AsRef<Path>) -> Result<GraphPaths> {
    let paths = GraphPaths::new(prefix);
    let mut nodes = create(&paths.nodes)?;
    let mut skills = create(&paths.skills)?;
    for v in g.experts() {
        check_field(g.name(v), "expert name")?;
        writeln!(nodes, "{}\t{}", v, g.name(v))?;
        let held: Vec<&str> = g.skill_names_of(v).collect();
        writeln!(skills, "{}\t{}", v, held.join(" "))?;
    }
    nodes.flush()?;
    skills.flush()?;
    let mut edges = create(&paths.edges)?;
    for (u, v, w) in g.edges() {
        writeln!(edges, "{u}\t{v}\t{}", format_weight(w))?;
    }
    edges.flush()?;
    Ok(paths)
}

fn lines(path: &Path) -> Result<impl Iterator<Item = (usize, Result<String>)>> {
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    Ok(BufReader::new(file)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.map_err(Error::from)))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.is_empty())))
}

fn parse_id(path: &Path, line: usize, field: &str) -> Result<ExpertId> {
    field
        .parse::<u32>()
        .map(ExpertId)
        .map_err(|_| parse_err(path, line, format!("bad expert id {field:?}")))
}

pub fn read_graph(prefix: impl AsRef<Path>) -> Result<ExpertGraph> {
    let paths = GraphPaths::new(prefix);

    let mut names: Vec<Option<String>> = Vec::new();
    for (n, line) in lines(&paths.nodes)? {
        let line = line?;
        let (id, name) = line
            .split_once('\t')
            .ok_or_else(|| parse_err(&paths.nodes, n, "expected id<TAB>name"))?;
        let id = parse_id(&paths.nodes, n, id)?;
        if names.len() <= id.index() {
            names.resize(id.index() + 1, None);
        }
        if names[id.index()].replace(name.to_owned()).is_some() {
            return Err(parse_err(&paths.nodes, n, format!("duplicate id {id}")));
        }
    }
    let mut b = GraphBuilder::new();
    for (i, name) in names.into_iter().enumerate() {
        let name = name.ok_or_else(|| {
            parse_err(&paths.nodes, 0, format!("ids are not dense: {i} is missing"))
        })?;
        b.add_expert(name, std::iter::empty::<&str>())?;
    }

    for (n, line) in lines(&paths.skills)? {
        let line = line?;
        let (id, tokens) = line.split_once('\t').unwrap_or((line.as_str(), ""));
        let id = parse_id(&paths.skills, n, id)?;
        for token in tokens.split(' ').filter(|t| !t.is_empty()) {
            b.add_skill(id, token)
                .map_err(|e| parse_err(&paths.skills, n, e.to_string()))?;
        }
    }

    for (n, line) in lines(&paths.edges)? {
        let line = line?;
        let mut fields = line.split('\t');
        let (Some(u), Some(v), Some(w), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(parse_err(&paths.edges, n, "expected id<TAB>id<TAB>weight"));
        };
        let u = parse_id(&paths.edges, n, u)?;
        let v = parse_id(&paths.edges, n, v)?;
        let w: f64 = w
            .parse()
            .map_err(|_| parse_err(&paths.edges, n, format!("bad weight {w:?}")))?;
        b.add_edge(u, v, w)
            .map_err(|e| parse_err(&paths.edges, n, e.to_string()))?;
    }
    b.build()
}

pub fn write_communities(communities: &[Community], path: impl AsRef<Path>) -> Result<()> {
    let mut out = create(path.as_ref())?;
    for c in communities {
        check_field(&c.name, "community name")?;
        if c.name.contains(',') || c.name == "-" {
            return Err(Error::InvalidArgument(format!(
                "community name {:?} is not representable",
                c.name
            )));
        }
        let ids: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "{}\t{}\t{}",
            c.name,
            c.parent.as_deref().unwrap_or("-"),
            ids.join(",")
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_communities(path: impl AsRef<Path>) -> Result<Vec<Community>> {
    let path = path.as_ref();
    let mut out = Vec::new();
    for (n, line) in lines(path)? {
        let line = line?;
        let mut fields = line.split('\t');
        let (Some(name), Some(parent), ids, None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(parse_err(path, n, "expected name<TAB>parent<TAB>ids"));
        };
        let mut members = Vec::new();
        for id in ids.unwrap_or("").split(',').filter(|s| !s.is_empty()) {
            members.push(parse_id(path, n, id)?);
        }
        let mut c = Community::new(name, members);
        if parent != "-" {
            c = c.with_parent(parent);
        }
        out.push(c);
    }
    Ok(out)
}
