//! Text grammar for structures.
//!
//! ```text
//! structure := term ('+' term)* | ''
//! term      := block ('*' INT)?
//! block     := 'M' INT | 'K' INT | 'H' INT '(' label ')'      skew
//!            | 'L' INT | 'Lt' INT | 'E' INT '(' label ')'     general
//! label     := IDENT | 'inf' | RATIONAL
//! ```
//!
//! Whitespace is ignored. Columns in errors are 1-based character positions
//! of the original input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{
    CanonicalStructure, EigenvalueLabel, GeneralStructure, Kind, SkewStructure, Spectrum,
    StructureError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    M,
    H,
    K,
    L,
    Lt,
    E,
}

impl BlockKind {
    fn kind(self) -> Kind {
        match self {
            BlockKind::M | BlockKind::H | BlockKind::K => Kind::Skew,
            BlockKind::L | BlockKind::Lt | BlockKind::E => Kind::General,
        }
    }

    fn name(self) -> &'static str {
        match self {
            BlockKind::M => "M",
            BlockKind::H => "H",
            BlockKind::K => "K",
            BlockKind::L => "L",
            BlockKind::Lt => "Lt",
            BlockKind::E => "E",
        }
    }

    fn has_label(self) -> bool {
        matches!(self, BlockKind::H | BlockKind::E)
    }

    fn zero_allowed(self) -> bool {
        matches!(self, BlockKind::M | BlockKind::L | BlockKind::Lt)
    }
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_column: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Self {
            chars,
            pos: 0,
            end_column: text.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.end_column, |&(col, _)| col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, StructureError> {
        Err(StructureError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), StructureError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.syntax(format!("expected `{c}`, found `{found}`")),
                None => self.syntax(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn digits(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn integer(&mut self) -> Result<usize, StructureError> {
        let column = self.column();
        let digits = self.digits();
        if digits.is_empty() {
            return self.syntax("expected an integer");
        }
        digits.parse().map_err(|_| StructureError::Syntax {
            column,
            message: format!("integer `{digits}` is out of range"),
        })
    }

    fn label(&mut self) -> Result<EigenvalueLabel, StructureError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    ident.push(c);
                    self.pos += 1;
                }
                if ident == "inf" {
                    Ok(EigenvalueLabel::Infinity)
                } else {
                    Ok(EigenvalueLabel::Anonymous(ident))
                }
            }
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let column = self.column();
                let negative = self.eat('-');
                let numer = self.digits();
                if numer.is_empty() {
                    return self.syntax("expected digits in rational label");
                }
                let denom = if self.eat('/') {
                    let d = self.digits();
                    if d.is_empty() {
                        return self.syntax("expected denominator");
                    }
                    d
                } else {
                    "1".to_owned()
                };
                let mut numer: BigInt = numer.parse().expect("digits");
                let denom: BigInt = denom.parse().expect("digits");
                if denom.is_zero() {
                    return Err(StructureError::Syntax {
                        column,
                        message: "zero denominator".to_owned(),
                    });
                }
                if negative {
                    numer = -numer;
                }
                Ok(EigenvalueLabel::Finite(BigRational::new(numer, denom)))
            }
            Some(found) => self.syntax(format!("expected an eigenvalue label, found `{found}`")),
            None => self.syntax("expected an eigenvalue label, found end of input"),
        }
    }
}

struct Term {
    block: BlockKind,
    size: usize,
    label: Option<EigenvalueLabel>,
    count: usize,
}

fn parse_term(cur: &mut Cursor, kind: Kind) -> Result<Term, StructureError> {
    let column = cur.column();
    let block = match cur.bump() {
        Some('M') => BlockKind::M,
        Some('H') => BlockKind::H,
        Some('K') => BlockKind::K,
        Some('E') => BlockKind::E,
        Some('L') => {
            if cur.eat('t') {
                BlockKind::Lt
            } else {
                BlockKind::L
            }
        }
        Some(found) => {
            cur.pos -= 1;
            return cur.syntax(format!("expected a block (M, H, K, L, Lt, E), found `{found}`"));
        }
        None => return cur.syntax("expected a block, found end of input"),
    };
    if block.kind() != kind {
        return Err(StructureError::KindMismatch {
            column,
            block: block.name().to_owned(),
            kind,
        });
    }
    let size = cur.integer()?;
    if size == 0 && !block.zero_allowed() {
        return Err(StructureError::ZeroBlock {
            column,
            block: format!("{}0", block.name()),
        });
    }
    let label = if block.has_label() {
        cur.expect('(')?;
        let label = cur.label()?;
        cur.expect(')')?;
        Some(label)
    } else {
        None
    };
    let count = if cur.eat('*') {
        let c = cur.integer()?;
        if c == 0 {
            return cur.syntax("multiplicity must be positive");
        }
        c
    } else {
        1
    };
    Ok(Term {
        block,
        size,
        label,
        count,
    })
}

/// Parses `text` as a structure of the given kind.
pub fn parse_structure(text: &str, kind: Kind) -> Result<CanonicalStructure, StructureError> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    if cur.peek().is_some() {
        loop {
            terms.push(parse_term(&mut cur, kind)?);
            if cur.peek().is_none() {
                break;
            }
            cur.expect('+')?;
        }
    }

    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut blocks = Vec::new();
    for t in terms {
        for _ in 0..t.count {
            match t.block {
                BlockKind::M | BlockKind::L => first.push(t.size),
                BlockKind::Lt => second.push(t.size),
                BlockKind::K => blocks.push((EigenvalueLabel::Infinity, t.size)),
                BlockKind::H | BlockKind::E => {
                    blocks.push((t.label.clone().expect("labelled block"), t.size))
                }
            }
        }
    }
    let spectrum = Spectrum::from_blocks(blocks)?;
    Ok(match kind {
        Kind::Skew => CanonicalStructure::Skew(SkewStructure::new(first, spectrum)),
        Kind::General => {
            CanonicalStructure::General(GeneralStructure::new(first, second, spectrum))
        }
    })
}
