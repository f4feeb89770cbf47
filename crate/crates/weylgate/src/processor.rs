//! Deterministic three-bus quantum processor simulator.
//!
//! The processor holds a quantum data bus, an intermediate bus whose
//! orthogonal basis states select which gate acts on the data, and a
//! pseudo-classical program bus that steps the intermediate bus through a
//! gate-id tape. Programs are written in a small DSL:
//!
//! ```text
//! program := stmt (";" stmt)* ";"?
//! stmt    := gate-id
//!          | "repeat" ( gate-id | "{" program "}" ) integer "times"
//! gate-id := letter (letter | digit)*
//! ```
//!
//! `repeat` and `times` are reserved words. Extra statement separators are
//! tolerated; printing an AST produces the canonical text form.
//!
//! The program bus is modeled classically (a tape cursor): before each step
//! the intermediate bus is re-prepared in the orthogonal basis state for the
//! next gate id, the block-diagonal controlled unitary Σ_j |j⟩⟨j| ⊗ U_j acts
//! on intermediate ⊗ data, and the data register is read back out. Feeding
//! the intermediate bus a superposition of two program states instead
//! entangles program with data; [`superposition_malfunction`] quantifies that
//! entanglement in bits.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::entanglement_entropy;
use crate::matrix::{ComplexMatrix, ComplexVector, MatrixError, C_ZERO, IDENTITY_TOL};

/// Default cap on the flattened tape length.
pub const TAPE_CAP: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum ProcessorError {
    #[error("flattened tape length {len} exceeds cap {cap}")]
    TapeTooLong { len: u64, cap: u64 },
    #[error("flattened tape length overflows")]
    LengthOverflow,
    #[error("unknown gate id `{0}`")]
    UnknownGate(String),
    #[error("duplicate gate id `{0}`")]
    DuplicateGate(String),
    #[error("gate table is empty")]
    EmptyTable,
    #[error("gate `{id}` is not unitary within {tol}")]
    NonUnitaryGate { id: String, tol: f64 },
    #[error("gate `{id}` has dimension {got}, expected {want}")]
    MixedGateDims { id: String, got: usize, want: usize },
    #[error("state vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("state dimension {got} does not match the data bus dimension {want}")]
    WrongDataDim { got: usize, want: usize },
    #[error("program state index {index} out of range 0..{size}")]
    ProgramStateOutOfRange { index: usize, size: usize },
    #[error("superposed program states must differ")]
    EqualProgramStates,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

/// One statement of the processor DSL.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProgramNode {
    Gate(String),
    Repeat(Vec<ProgramNode>, u64),
}

/// Parsed processor program: the AST plus the text it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessorProgram {
    nodes: Vec<ProgramNode>,
    source: String,
}

impl ProcessorProgram {
    pub fn nodes(&self) -> &[ProgramNode] {
        &self.nodes
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn from_nodes(nodes: Vec<ProgramNode>) -> Self {
        let source = render(&nodes);
        Self { nodes, source }
    }

    /// Length of the flattened tape, computed without unrolling.
    pub fn flattened_len(&self) -> Result<u64, ProcessorError> {
        nodes_len(&self.nodes)
    }

    /// Canonical text form.
    pub fn canonical(&self) -> String {
        render(&self.nodes)
    }
}

impl fmt::Display for ProcessorProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

fn nodes_len(nodes: &[ProgramNode]) -> Result<u64, ProcessorError> {
    let mut total: u64 = 0;
    for node in nodes {
        let part = match node {
            ProgramNode::Gate(_) => 1,
            ProgramNode::Repeat(body, count) => nodes_len(body)?
                .checked_mul(*count)
                .ok_or(ProcessorError::LengthOverflow)?,
        };
        total = total
            .checked_add(part)
            .ok_or(ProcessorError::LengthOverflow)?;
    }
    Ok(total)
}

fn render(nodes: &[ProgramNode]) -> String {
    nodes.iter().map(render_node).collect::<Vec<_>>().join("; ")
}

fn render_node(node: &ProgramNode) -> String {
    match node {
        ProgramNode::Gate(id) => id.clone(),
        ProgramNode::Repeat(body, count) => match body.as_slice() {
            [ProgramNode::Gate(id)] => format!("repeat {id} {count} times"),
            _ => format!("repeat {{ {} }} {count} times", render(body)),
        },
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Integer(u64),
    Semi,
    LBrace,
    RBrace,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else { break };
            let token = match c {
                ';' => {
                    self.bump();
                    Token::Semi
                }
                '{' => {
                    self.bump();
                    Token::LBrace
                }
                '}' => {
                    self.bump();
                    Token::RBrace
                }
                c if c.is_ascii_digit() => {
                    let mut value: u64 = 0;
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        let d = self.bump().expect("peeked");
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(u64::from(d as u8 - b'0')))
                            .ok_or_else(|| self.error("integer literal too large"))?;
                    }
                    Token::Integer(value)
                }
                c if c.is_alphabetic() => {
                    let mut ident = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_alphanumeric()) {
                        ident.push(self.bump().expect("peeked"));
                    }
                    Token::Ident(ident)
                }
                other => return Err(self.error(format!("unexpected character `{other}`"))),
            };
            out.push((token, line, column));
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map_or((1, 1), |&(_, l, c)| (l, c))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        self.pos += 1;
        t
    }

    fn parse_program(&mut self, nested: bool) -> Result<Vec<ProgramNode>, ParseError> {
        let mut nodes = Vec::new();
        loop {
            while self.peek() == Some(&Token::Semi) {
                self.bump();
            }
            match self.peek() {
                None => break,
                Some(Token::RBrace) if nested => break,
                Some(Token::RBrace) => return Err(self.error("unmatched `}`")),
                _ => {}
            }
            nodes.push(self.parse_stmt()?);
            match self.peek() {
                Some(Token::Semi) => continue,
                None => break,
                Some(Token::RBrace) if nested => break,
                _ => return Err(self.error("expected `;` between statements")),
            }
        }
        Ok(nodes)
    }

    fn parse_stmt(&mut self) -> Result<ProgramNode, ParseError> {
        match self.peek() {
            Some(Token::Ident(id)) if id == "repeat" => {
                self.bump();
                let body = match self.peek() {
                    Some(Token::LBrace) => {
                        self.bump();
                        let inner = self.parse_program(true)?;
                        match self.bump() {
                            Some(Token::RBrace) => inner,
                            _ => return Err(self.error("expected `}` to close repeat body")),
                        }
                    }
                    Some(Token::Ident(id)) if id != "times" && id != "repeat" => {
                        let id = id.clone();
                        self.bump();
                        vec![ProgramNode::Gate(id)]
                    }
                    _ => return Err(self.error("expected gate id or `{` after `repeat`")),
                };
                let count = match self.bump() {
                    Some(Token::Integer(k)) => k,
                    _ => return Err(self.error("expected repeat count")),
                };
                if count == 0 {
                    return Err(self.error("repeat count must be at least 1"));
                }
                match self.bump() {
                    Some(Token::Ident(kw)) if kw == "times" => {}
                    _ => return Err(self.error("expected `times` after repeat count")),
                }
                Ok(ProgramNode::Repeat(body, count))
            }
            Some(Token::Ident(id)) if id == "times" => {
                Err(self.error("`times` is a reserved word"))
            }
            Some(Token::Ident(id)) => {
                let id = id.clone();
                self.bump();
                Ok(ProgramNode::Gate(id))
            }
            _ => Err(self.error("expected a statement")),
        }
    }
}

/// Parse program text into an AST. Parsing the printed form of any AST
/// returns an identical AST.
pub fn parse_program(text: &str) -> Result<ProcessorProgram, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let nodes = parser.parse_program(false)?;
    Ok(ProcessorProgram {
        nodes,
        source: text.to_string(),
    })
}

/// Fully unroll a program into its gate-id tape (capped at [`TAPE_CAP`]).
pub fn flatten(program: &ProcessorProgram) -> Result<Vec<String>, ProcessorError> {
    let len = program.flattened_len()?;
    if len > TAPE_CAP {
        return Err(ProcessorError::TapeTooLong { len, cap: TAPE_CAP });
    }
    let mut tape = Vec::with_capacity(len as usize);
    unroll(&program.nodes, &mut tape);
    Ok(tape)
}

fn unroll(nodes: &[ProgramNode], tape: &mut Vec<String>) {
    for node in nodes {
        match node {
            ProgramNode::Gate(id) => tape.push(id.clone()),
            ProgramNode::Repeat(body, count) => {
                for _ in 0..*count {
                    unroll(body, tape);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Gate table and controlled dynamics
// ---------------------------------------------------------------------------

/// Gate-id → unitary map; the table size M is the intermediate bus dimension
/// and program state |j⟩ selects the j-th gate in id-sorted order.
pub struct GateTable {
    ids: Vec<String>,
    gates: Vec<ComplexMatrix>,
}

impl GateTable {
    pub fn new(
        entries: impl IntoIterator<Item = (String, ComplexMatrix)>,
    ) -> Result<Self, ProcessorError> {
        let mut map = BTreeMap::new();
        for (id, gate) in entries {
            if map.insert(id.clone(), gate).is_some() {
                return Err(ProcessorError::DuplicateGate(id));
            }
        }
        if map.is_empty() {
            return Err(ProcessorError::EmptyTable);
        }
        let data_dim = map.values().next().expect("nonempty").dim();
        for (id, gate) in &map {
            if gate.dim() != data_dim {
                return Err(ProcessorError::MixedGateDims {
                    id: id.clone(),
                    got: gate.dim(),
                    want: data_dim,
                });
            }
            if !gate.is_unitary(IDENTITY_TOL) {
                return Err(ProcessorError::NonUnitaryGate {
                    id: id.clone(),
                    tol: IDENTITY_TOL,
                });
            }
        }
        let (ids, gates) = map.into_iter().unzip();
        Ok(Self { ids, gates })
    }

    /// Number of gates M (= intermediate bus dimension).
    pub fn program_dim(&self) -> usize {
        self.ids.len()
    }

    /// Data bus dimension D.
    pub fn data_dim(&self) -> usize {
        self.gates[0].dim()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn gate(&self, index: usize) -> &ComplexMatrix {
        &self.gates[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .ok()
    }

    pub fn to_json(&self) -> GateTableFile {
        GateTableFile {
            gates: self
                .ids
                .iter()
                .cloned()
                .zip(self.gates.iter().cloned())
                .collect(),
        }
    }
}

/// Serialized form of a gate table: `{"gates": {"U5": {dim, re, im}, ...}}`.
#[derive(Serialize, Deserialize)]
pub struct GateTableFile {
    pub gates: BTreeMap<String, ComplexMatrix>,
}

impl GateTableFile {
    pub fn into_table(self) -> Result<GateTable, ProcessorError> {
        GateTable::new(self.gates)
    }
}

/// The (M·D)x(M·D) block-diagonal unitary Σ_j |j⟩⟨j| ⊗ U_j.
pub fn controlled_unitary(table: &GateTable) -> ComplexMatrix {
    let m = table.program_dim();
    let d = table.data_dim();
    ComplexMatrix::from_fn(m * d, |row, col| {
        let (jr, ir) = (row / d, row % d);
        let (jc, ic) = (col / d, col % d);
        if jr == jc {
            table.gate(jr).get(ir, ic)
        } else {
            C_ZERO
        }
    })
}

fn check_unit(v: &ComplexVector) -> Result<(), ProcessorError> {
    let norm = v.norm();
    if (norm - 1.0).abs() > IDENTITY_TOL {
        return Err(ProcessorError::NotNormalized { norm });
    }
    Ok(())
}

/// Run a program: for each tape entry the intermediate bus is re-prepared in
/// the matching basis state, the controlled unitary acts on the joint state,
/// and the data register is extracted again. Equals the direct gate product
/// applied to `data_in`.
pub fn run(
    program: &ProcessorProgram,
    table: &GateTable,
    data_in: &ComplexVector,
) -> Result<ComplexVector, ProcessorError> {
    if data_in.dim() != table.data_dim() {
        return Err(ProcessorError::WrongDataDim {
            got: data_in.dim(),
            want: table.data_dim(),
        });
    }
    check_unit(data_in)?;
    let tape = flatten(program)?;
    let cu = controlled_unitary(table);
    let m = table.program_dim();
    let d = table.data_dim();
    let mut data = data_in.clone();
    for id in &tape {
        let j = table
            .index_of(id)
            .ok_or_else(|| ProcessorError::UnknownGate(id.clone()))?;
        let joint = ComplexVector::basis_state(m, j).tensor(&data);
        let joint = cu.apply(&joint);
        // Block-diagonal action keeps the state in program block j.
        let block: Vec<C64> = joint.entries()[j * d..(j + 1) * d].to_vec();
        data = ComplexVector::new(block)?;
    }
    Ok(data)
}

/// Drive the controlled unitary with a superposition α|j⟩ + β|k⟩ of program
/// states and return the program/data entanglement entropy in bits: zero when
/// both branches act identically on the data (up to phase), positive
/// otherwise. This is the processor's superposition malfunction.
pub fn superposition_malfunction(
    table: &GateTable,
    j: usize,
    k: usize,
    alpha: C64,
    beta: C64,
    data_in: &ComplexVector,
) -> Result<f64, ProcessorError> {
    let m = table.program_dim();
    let d = table.data_dim();
    for index in [j, k] {
        if index >= m {
            return Err(ProcessorError::ProgramStateOutOfRange { index, size: m });
        }
    }
    if j == k {
        return Err(ProcessorError::EqualProgramStates);
    }
    let weight = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (weight - 1.0).abs() > IDENTITY_TOL {
        return Err(ProcessorError::NotNormalized { norm: weight });
    }
    if data_in.dim() != d {
        return Err(ProcessorError::WrongDataDim {
            got: data_in.dim(),
            want: d,
        });
    }
    check_unit(data_in)?;

    let mut program_state = vec![C_ZERO; m];
    program_state[j] = alpha;
    program_state[k] = beta;
    let joint = ComplexVector::new(program_state)?.tensor(data_in);
    let joint = controlled_unitary(table).apply(&joint);
    Ok(entanglement_entropy(joint.entries(), m, d))
}
