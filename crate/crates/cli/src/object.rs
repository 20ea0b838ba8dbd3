//! Inputs named on the command line: family specs such as `cube:3` or
//! `simplex:2*cube:3`, or files holding a polytope or graph record.

use std::path::Path;

use polydraw_core::geom::construct::{
    cross_polytope, cube, cyclic_default, dodecahedron, icosahedron, klee_minty, permutohedron, product,
    random_spherical, simplex, zonotope,
};
use polydraw_core::geom::io::{graph_from_json, polytope_from_json};
use polydraw_core::geom::{int, Point};
use polydraw_core::{Error, Graph, Polytope, Result};

#[derive(Clone, Debug)]
pub enum Object {
    Polytope(Polytope),
    Graph(Graph),
}

impl Object {
    pub fn graph(&self) -> Graph {
        match self {
            Object::Polytope(p) => p.graph(),
            Object::Graph(g) => g.clone(),
        }
    }

    pub fn polytope(&self) -> Result<&Polytope> {
        match self {
            Object::Polytope(p) => Ok(p),
            Object::Graph(_) => Err(Error::InvalidParameter("this command needs a polytope, not a graph".into())),
        }
    }
}

/// Generators of `zonotope:k`, the first `k` of these.
const ZONOTOPE_GENERATORS: [[i64; 3]; 7] =
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, -1, 0], [0, 1, -1], [1, 0, -1]];

fn arg(parts: &[&str], i: usize, spec: &str) -> Result<usize> {
    parts
        .get(i)
        .ok_or_else(|| Error::InvalidParameter(format!("{spec:?} needs {i} numeric argument(s)")))?
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad number in {spec:?}")))
}

/// Largest arguments accepted for the families, and the largest product.
const MAX_DIM: usize = 10;
const MAX_PERMUTOHEDRON: usize = 6;
const MAX_CYCLIC: (usize, usize) = (6, 60);
const MAX_RANDOM_POINTS: usize = 500;
const MAX_PRODUCT_VERTICES: usize = 5040;

fn at_most(value: usize, max: usize, what: &str) -> Result<usize> {
    if value > max {
        return Err(Error::InvalidParameter(format!("{what} is limited to {max}, got {value}")));
    }
    Ok(value)
}

/// Builds the polytope named by a family spec.
pub fn family(spec: &str) -> Result<Polytope> {
    if let Some((a, b)) = spec.split_once('*') {
        let (p, q) = (family(a)?, family(b)?);
        at_most(p.vertices().len() * q.vertices().len(), MAX_PRODUCT_VERTICES, "number of product vertices")?;
        return product(&p, &q);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let a = |i| arg(&parts, i, spec);
    let dim = |i| a(i).and_then(|d| at_most(d, MAX_DIM, "dimension"));
    match parts[0] {
        "simplex" => simplex(dim(1)?),
        "cube" => cube(dim(1)?),
        "cross" => cross_polytope(dim(1)?),
        "permutohedron" => permutohedron(at_most(a(1)?, MAX_PERMUTOHEDRON, "permutohedron order")?),
        "cyclic" => cyclic_default(
            at_most(a(1)?, MAX_CYCLIC.0, "cyclic dimension")?,
            at_most(a(2)?, MAX_CYCLIC.1, "number of cyclic points")?,
        ),
        "klee-minty" => klee_minty(dim(1)?),
        "icosahedron" => Ok(icosahedron()),
        "dodecahedron" => Ok(dodecahedron()),
        "random-spherical" => random_spherical(at_most(a(1)?, MAX_RANDOM_POINTS, "number of random points")?, a(2)? as u64),
        "zonotope" => {
            let k = a(1)?;
            if !(1..=ZONOTOPE_GENERATORS.len()).contains(&k) {
                return Err(Error::InvalidParameter(format!("zonotope takes 1 to {} generators", ZONOTOPE_GENERATORS.len())));
            }
            let gens: Vec<Point> = ZONOTOPE_GENERATORS[..k].iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect();
            zonotope(&gens)
        }
        other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    }
}

/// A file holding a polytope or graph record, or a family spec.
pub fn load(name: &str) -> Result<Object> {
    if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        return if value.get("edges").is_some() {
            Ok(Object::Graph(graph_from_json(&text)?))
        } else {
            Ok(Object::Polytope(polytope_from_json(&text)?))
        };
    }
    Ok(Object::Polytope(family(name)?))
}
