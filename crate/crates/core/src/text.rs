//! Text grammar shared by the library and the CLI.
//!
//! ```text
//! bit      := "0" | "1"
//! word     := bit* "|" bit+
//! point    := "zero" | fiber "=" word (";" fiber "=" word)*
//! cylinder := "{}" | "{" fiber ":" pos "=" bit ("," fiber ":" pos "=" bit)* "}"
//! index    := "<{" fiber ("," fiber)* "}," k ">"
//! sft      := ["alphabet=" n ";"] "forbid=" [word ("," word)*]
//! ```
//!
//! Whitespace between tokens is ignored. Printing always emits canonical
//! forms, fibers in lexicographic order and positions ascending, so
//! `parse(print(v)) == v` for every value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::Error;
use crate::sft::SftSystem;
use crate::space::{Coordinate, Cylinder, FiberLabel, FiberWord, Point};
use crate::uniformity::UIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("positions are 1-based; got position 0")]
    ZeroPosition,
    #[error("coordinate {0} constrained twice")]
    DuplicateCoordinate(String),
    #[error("fiber {0} given twice")]
    DuplicateFiber(String),
    #[error("number out of range")]
    NumberOutOfRange,
    #[error("unexpected trailing input")]
    TrailingInput,
    #[error("{0}")]
    Invalid(String),
}

/// Which grammar [`parse_value`] should apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Point,
    Cylinder,
    Index,
    Sft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Point(Point),
    Cylinder(Cylinder),
    Index(UIndex),
    Sft(SftSystem),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => p.fmt(f),
            Value::Cylinder(c) => c.fmt(f),
            Value::Index(i) => i.fmt(f),
            Value::Sft(s) => s.fmt(f),
        }
    }
}

pub fn parse_value(kind: ValueKind, text: &str) -> Result<Value, ParseError> {
    Ok(match kind {
        ValueKind::Point => Value::Point(text.parse()?),
        ValueKind::Cylinder => Value::Cylinder(text.parse()?),
        ValueKind::Index => Value::Index(text.parse()?),
        ValueKind::Sft => Value::Sft(text.parse()?),
    })
}

struct Cursor<'a> {
    src: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, at: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.at..]
    }

    fn error_at(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = self.src[line_start..at].chars().count() + 1;
        ParseError { line, column, kind }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.at, kind)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.at = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(kw) {
            self.at += kw.len();
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::TrailingInput))
        }
    }

    fn label(&mut self) -> Result<(FiberLabel, usize), ParseError> {
        self.skip_ws();
        let start = self.at;
        let len: usize = self
            .rest()
            .chars()
            .take_while(|&c| FiberLabel::is_label_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(self.error(ParseErrorKind::Expected("fiber label")));
        }
        self.at += len;
        let label = FiberLabel::new(&self.src[start..self.at]).expect("scanned label chars only");
        Ok((label, start))
    }

    fn number(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.at;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error(ParseErrorKind::Expected("decimal number")));
        }
        self.at += len;
        let n = self.src[start..self.at]
            .parse()
            .map_err(|_| self.error_at(start, ParseErrorKind::NumberOutOfRange))?;
        Ok((n, start))
    }

    fn bits(&mut self) -> Vec<bool> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(|b| matches!(b, b'0' | b'1')).count();
        let bits = self.rest()[..len].bytes().map(|b| b == b'1').collect();
        self.at += len;
        bits
    }

    fn bit(&mut self) -> Result<bool, ParseError> {
        match self.peek() {
            Some('0') => {
                self.at += 1;
                Ok(false)
            }
            Some('1') => {
                self.at += 1;
                Ok(true)
            }
            _ => Err(self.error(ParseErrorKind::Expected("bit 0 or 1"))),
        }
    }

    fn word(&mut self) -> Result<FiberWord, ParseError> {
        let transient = self.bits();
        self.expect('|', "'|' between transient and period")?;
        let period = self.bits();
        if period.is_empty() {
            return Err(self.error(ParseErrorKind::Expected("nonempty period")));
        }
        Ok(FiberWord::new(transient, period).expect("period checked nonempty"))
    }

    fn point(&mut self) -> Result<Point, ParseError> {
        let (first, first_at) = self.label()?;
        if first.as_str() == "zero" && self.peek() != Some('=') {
            return Ok(Point::zero());
        }
        let mut fibers = BTreeMap::new();
        let (mut label, mut at) = (first, first_at);
        loop {
            self.expect('=', "'=' after fiber label")?;
            let word = self.word()?;
            if fibers.contains_key(&label) {
                return Err(self.error_at(at, ParseErrorKind::DuplicateFiber(label.as_str().into())));
            }
            fibers.insert(label, word);
            if !self.eat(';') {
                break;
            }
            (label, at) = self.label()?;
        }
        Ok(Point::from_fibers(fibers).expect("duplicates rejected above"))
    }

    fn coordinate(&mut self) -> Result<Coordinate, ParseError> {
        let (fiber, _) = self.label()?;
        self.expect(':', "':' between fiber and position")?;
        let (pos, at) = self.number()?;
        Coordinate::new(fiber, pos).map_err(|_| self.error_at(at, ParseErrorKind::ZeroPosition))
    }

    fn cylinder(&mut self) -> Result<Cylinder, ParseError> {
        self.expect('{', "'{'")?;
        let mut constraints = BTreeMap::new();
        if !self.eat('}') {
            loop {
                self.skip_ws();
                let at = self.at;
                let c = self.coordinate()?;
                self.expect('=', "'=' before bit")?;
                let b = self.bit()?;
                if constraints.contains_key(&c) {
                    let shown = format!("{}:{}", c.fiber(), c.pos());
                    return Err(self.error_at(at, ParseErrorKind::DuplicateCoordinate(shown)));
                }
                constraints.insert(c, b);
                if self.eat('}') {
                    break;
                }
                self.expect(',', "',' or '}'")?;
            }
        }
        Ok(Cylinder::new(constraints).expect("duplicates rejected above"))
    }

    fn index(&mut self) -> Result<UIndex, ParseError> {
        self.expect('<', "'<'")?;
        self.expect('{', "'{'")?;
        let mut fibers = BTreeSet::new();
        loop {
            let (label, at) = self.label()?;
            if !fibers.insert(label.clone()) {
                return Err(self.error_at(at, ParseErrorKind::DuplicateFiber(label.as_str().into())));
            }
            if self.eat('}') {
                break;
            }
            self.expect(',', "',' or '}'")?;
        }
        self.expect(',', "',' before depth")?;
        let (k, at) = self.number()?;
        self.expect('>', "'>'")?;
        UIndex::new(fibers, k).map_err(|e| self.error_at(at, ParseErrorKind::Invalid(e.to_string())))
    }

    fn sft(&mut self) -> Result<SftSystem, ParseError> {
        let mut alphabet = 2u8;
        let mut alphabet_at = self.at;
        if self.eat_keyword("alphabet") {
            self.expect('=', "'=' after alphabet")?;
            let (n, at) = self.number()?;
            alphabet = u8::try_from(n).map_err(|_| self.error_at(at, ParseErrorKind::NumberOutOfRange))?;
            alphabet_at = at;
            self.expect(';', "';' after alphabet size")?;
        }
        if !self.eat_keyword("forbid") {
            return Err(self.error(ParseErrorKind::Expected("'forbid='")));
        }
        self.expect('=', "'=' after forbid")?;
        let mut forbidden = Vec::new();
        self.skip_ws();
        if !self.rest().is_empty() {
            loop {
                self.skip_ws();
                let at = self.at;
                let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
                if len == 0 {
                    return Err(self.error(ParseErrorKind::Expected("forbidden word")));
                }
                let word: Vec<u8> = self.rest()[..len].bytes().map(|b| b - b'0').collect();
                if let Some(&s) = word.iter().find(|&&s| s >= alphabet) {
                    let msg = format!("symbol {s} outside alphabet of size {alphabet}");
                    return Err(self.error_at(at, ParseErrorKind::Invalid(msg)));
                }
                self.at += len;
                forbidden.push(word);
                if !self.eat(',') {
                    break;
                }
            }
        }
        SftSystem::new(alphabet, forbidden)
            .map_err(|e| self.error_at(alphabet_at, ParseErrorKind::Invalid(e.to_string())))
    }
}

fn parse_all<T>(
    s: &str,
    f: impl FnOnce(&mut Cursor<'_>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut cursor = Cursor::new(s);
    let value = f(&mut cursor)?;
    cursor.finish()?;
    Ok(value)
}

fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[bool]) -> fmt::Result {
    bits.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
}

impl fmt::Display for FiberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FiberLabel {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.label().map(|(l, _)| l))
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.fiber(), self.pos())
    }
}

impl fmt::Display for FiberWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, self.transient())?;
        f.write_str("|")?;
        write_bits(f, self.period())
    }
}

impl FromStr for FiberWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.word())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("zero");
        }
        for (i, (label, word)) in self.fibers().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{label}={word}")?;
        }
        Ok(())
    }
}

impl FromStr for Point {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.point())
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, b)) in self.constraints().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}={}", u8::from(b))?;
        }
        f.write_str("}")
    }
}

impl FromStr for Cylinder {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.cylinder())
    }
}

impl fmt::Display for UIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<{")?;
        for (i, label) in self.fibers().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(label.as_str())?;
        }
        write!(f, "}},{}>", self.depth())
    }
}

impl FromStr for UIndex {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.index())
    }
}

impl fmt::Display for SftSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alphabet={}; forbid=", self.alphabet())?;
        for (i, w) in self.forbidden().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_word(w))?;
        }
        Ok(())
    }
}

impl FromStr for SftSystem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_all(s, |c| c.sft())
    }
}

/// Digits of a word over a small alphabet, e.g. `[0, 1, 1]` → `"011"`.
pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|&s| char::from(b'0' + s)).collect()
}

/// Inverse of [`format_word`].
pub fn parse_word(s: &str) -> Result<Vec<u8>, Error> {
    s.bytes()
        .map(|b| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::Parse(ParseError {
                    line: 1,
                    column: 1,
                    kind: ParseErrorKind::Expected("digit word"),
                }))
            }
        })
        .collect()
}

macro_rules! serde_via_text {
    ($($ty:ty),*) => {$(
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let text = String::deserialize(deserializer)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_via_text!(FiberLabel, FiberWord, Point, Cylinder, UIndex, SftSystem);
