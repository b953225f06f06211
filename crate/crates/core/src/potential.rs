//! Scalar fields on the closed strip.
//!
//! A [`Potential`] is either a closed-form expression in `x1`, `x2` or a
//! tensor grid of samples with bilinear interpolation. Expressions are
//! parsed by a small recursive-descent parser with constant folding:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Functions: `exp sin cos abs sqrt ln min max ind`. `ind(t, lo, hi)` is the
//! indicator of `lo <= t <= hi`. Constants: `pi`, `e`.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Exp,
    Sin,
    Cos,
    Abs,
    Sqrt,
    Ln,
    Min,
    Max,
    Ind,
}

impl Func {
    fn lookup(name: &str) -> Option<(Func, usize)> {
        Some(match name {
            "exp" => (Func::Exp, 1),
            "sin" => (Func::Sin, 1),
            "cos" => (Func::Cos, 1),
            "abs" => (Func::Abs, 1),
            "sqrt" => (Func::Sqrt, 1),
            "ln" => (Func::Ln, 1),
            "min" => (Func::Min, 2),
            "max" => (Func::Max, 2),
            "ind" | "indicator" => (Func::Ind, 3),
            _ => return None,
        })
    }

    fn apply(self, args: &[f64]) -> f64 {
        match self {
            Func::Exp => args[0].exp(),
            Func::Sin => args[0].sin(),
            Func::Cos => args[0].cos(),
            Func::Abs => args[0].abs(),
            Func::Sqrt => args[0].sqrt(),
            Func::Ln => args[0].ln(),
            Func::Min => args[0].min(args[1]),
            Func::Max => args[0].max(args[1]),
            Func::Ind => {
                if args[1] <= args[0] && args[0] <= args[2] {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn apply(self, l: f64, r: f64) -> f64 {
        match self {
            BinOp::Add => l + r,
            BinOp::Sub => l - r,
            BinOp::Mul => l * r,
            BinOp::Div => l / r,
            BinOp::Pow => l.powf(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

impl Node {
    fn eval(&self, vars: &[f64]) -> f64 {
        match self {
            Node::Const(c) => *c,
            Node::Var(i) => vars[*i],
            Node::Neg(n) => -n.eval(vars),
            Node::Bin(op, l, r) => op.apply(l.eval(vars), r.eval(vars)),
            Node::Call(f, args) => {
                let mut vals = [0.0; 3];
                for (slot, a) in vals.iter_mut().zip(args) {
                    *slot = a.eval(vars);
                }
                f.apply(&vals[..args.len()])
            }
        }
    }

    fn as_const(&self) -> Option<f64> {
        match self {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }
}

/// A parsed scalar expression over a fixed list of variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl Expr {
    pub fn parse(source: &str, var_names: &[&str]) -> Result<Self> {
        let mut p = Parser {
            src: source.as_bytes(),
            pos: 0,
            vars: var_names,
        };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(Self {
            source: source.to_string(),
            root,
        })
    }

    pub fn eval(&self, vars: &[f64]) -> f64 {
        self.root.eval(vars)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The folded value when the expression does not depend on any variable.
    pub fn constant(&self) -> Option<f64> {
        self.root.as_const()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(b'+') {
                BinOp::Add
            } else if self.eat(b'-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = fold(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(b'*') {
                BinOp::Mul
            } else if self.eat(b'/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = fold(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(match inner {
                Node::Const(c) => Node::Const(-c),
                other => Node::Neg(Box::new(other)),
            });
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(fold(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Node> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        if self.pos < self.src.len() && (self.src[self.pos] == b'e' || self.src[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len()
                && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse::<f64>()
            .map(Node::Const)
            .map_err(|_| Error::Parse {
                pos: start,
                msg: format!("bad number '{text}'"),
            })
    }

    fn ident(&mut self) -> Result<Node> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        if self.peek() == Some(b'(') {
            let (func, arity) = Func::lookup(name).ok_or_else(|| Error::Parse {
                pos: start,
                msg: format!("unknown function '{name}'"),
            })?;
            self.pos += 1;
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')' after arguments"));
            }
            if args.len() != arity {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("'{name}' takes {arity} argument(s), got {}", args.len()),
                });
            }
            if let Some(vals) = args.iter().map(Node::as_const).collect::<Option<Vec<_>>>() {
                return Ok(Node::Const(func.apply(&vals)));
            }
            return Ok(Node::Call(func, args));
        }
        if let Some(i) = self.vars.iter().position(|v| *v == name) {
            return Ok(Node::Var(i));
        }
        match name {
            "pi" => Ok(Node::Const(std::f64::consts::PI)),
            "e" => Ok(Node::Const(std::f64::consts::E)),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("unknown identifier '{name}'"),
            }),
        }
    }
}

fn fold(op: BinOp, l: Node, r: Node) -> Node {
    match (l.as_const(), r.as_const()) {
        (Some(a), Some(b)) => Node::Const(op.apply(a, b)),
        _ => Node::Bin(op, Box::new(l), Box::new(r)),
    }
}

/// Samples on a tensor grid, bilinearly interpolated; zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPotential {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    /// Row-major, `values[i * x2.len() + j]` at `(x1[i], x2[j])`.
    pub values: Vec<f64>,
}

impl GridPotential {
    pub fn new(x1: Vec<f64>, x2: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let ok_axis = |v: &[f64]| v.len() >= 2 && v.windows(2).all(|w| w[0] < w[1]);
        if !ok_axis(&x1) || !ok_axis(&x2) {
            return Err(Error::InvalidPotential(
                "grid axes need at least two strictly increasing values".into(),
            ));
        }
        if values.len() != x1.len() * x2.len() {
            return Err(Error::InvalidPotential(format!(
                "grid has {} values, expected {}",
                values.len(),
                x1.len() * x2.len()
            )));
        }
        Ok(Self { x1, x2, values })
    }

    /// Reads `x1,x2,value` rows (header optional) covering a full tensor grid.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::InvalidPotential(format!("{}: {e}", path.display())))?;
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::InvalidPotential(e.to_string()))?;
            let parsed: Option<Vec<f64>> = rec.iter().map(|s| s.parse::<f64>().ok()).collect();
            match parsed {
                Some(v) if v.len() == 3 => rows.push((v[0], v[1], v[2])),
                // header line
                None if rows.is_empty() => continue,
                _ => return Err(Error::InvalidPotential(format!("bad grid row: {rec:?}"))),
            }
        }
        let mut x1: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let mut x2: Vec<f64> = rows.iter().map(|r| r.1).collect();
        for axis in [&mut x1, &mut x2] {
            axis.sort_by(f64::total_cmp);
            axis.dedup();
        }
        let mut values = vec![f64::NAN; x1.len() * x2.len()];
        for (a, b, v) in rows {
            let i = x1.partition_point(|&x| x < a);
            let j = x2.partition_point(|&x| x < b);
            values[i * x2.len() + j] = v;
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidPotential(
                "grid file does not cover a full tensor grid".into(),
            ));
        }
        Self::new(x1, x2, values)
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let (n1, n2) = (self.x1.len(), self.x2.len());
        if x1 < self.x1[0] || x1 > self.x1[n1 - 1] || x2 < self.x2[0] || x2 > self.x2[n2 - 1] {
            return 0.0;
        }
        let i = self.x1.partition_point(|&x| x <= x1).clamp(1, n1 - 1) - 1;
        let j = self.x2.partition_point(|&x| x <= x2).clamp(1, n2 - 1) - 1;
        let t = (x1 - self.x1[i]) / (self.x1[i + 1] - self.x1[i]);
        let s = (x2 - self.x2[j]) / (self.x2[j + 1] - self.x2[j]);
        let v = |a: usize, b: usize| self.values[a * n2 + b];
        (1.0 - t) * (1.0 - s) * v(i, j)
            + t * (1.0 - s) * v(i + 1, j)
            + (1.0 - t) * s * v(i, j + 1)
            + t * s * v(i + 1, j + 1)
    }
}

/// Nonnegative potential `V(x₁, x₂)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Expr(Arc<Expr>),
    Grid(Arc<GridPotential>),
}

impl Potential {
    pub fn parse(source: &str) -> Result<Self> {
        Ok(Potential::Expr(Arc::new(Expr::parse(
            source,
            &["x1", "x2"],
        )?)))
    }

    pub fn constant(c: f64) -> Self {
        Potential::Expr(Arc::new(Expr {
            source: format!("{c}"),
            root: Node::Const(c),
        }))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn grid(grid: GridPotential) -> Self {
        Potential::Grid(Arc::new(grid))
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        match self {
            Potential::Expr(e) => e.eval(&[x1, x2]),
            Potential::Grid(g) => g.eval(x1, x2),
        }
    }

    /// Folded constant value, if any.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Potential::Expr(e) => e.constant(),
            Potential::Grid(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Potential::Expr(e) => e.source().to_string(),
            Potential::Grid(g) => format!("grid {}x{}", g.x1.len(), g.x2.len()),
        }
    }

    /// `t · V` as a new potential.
    pub fn scaled(&self, t: f64) -> Self {
        match self {
            Potential::Expr(e) => {
                let root = fold(BinOp::Mul, Node::Const(t), e.root.clone());
                Potential::Expr(Arc::new(Expr {
                    source: format!("{t}*({})", e.source),
                    root,
                }))
            }
            Potential::Grid(g) => {
                let values = g.values.iter().map(|v| v * t).collect();
                Potential::Grid(Arc::new(GridPotential {
                    x1: g.x1.clone(),
                    x2: g.x2.clone(),
                    values,
                }))
            }
        }
    }

    /// Rejects the potential if any sample on a `samples × samples` grid over
    /// the window is negative or non-finite.
    pub fn check_nonnegative(
        &self,
        x1_range: (f64, f64),
        width: f64,
        samples: usize,
    ) -> Result<()> {
        let n = samples.max(2);
        for i in 0..n {
            let x1 = x1_range.0 + (x1_range.1 - x1_range.0) * i as f64 / (n - 1) as f64;
            for j in 0..n {
                let x2 = width * j as f64 / (n - 1) as f64;
                let v = self.eval(x1, x2);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "V({x1}, {x2}) = {v} is not a nonnegative number"
                    )));
                }
            }
        }
        Ok(())
    }
}
