use std::fmt;
use std::str::FromStr;

use super::SetNumError;

/// Largest count a [`UnaryNumber`] may hold.
pub const UNARY_LIMIT: u64 = 1_000_000;

/// A natural number written as that many `/` strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnaryNumber(u64);

impl UnaryNumber {
    pub fn new(count: u64) -> Result<Self, SetNumError> {
        if count > UNARY_LIMIT {
            return Err(SetNumError::TooLarge(count as u128));
        }
        Ok(UnaryNumber(count))
    }

    pub fn count(self) -> u64 {
        self.0
    }

    fn checked(n: u128) -> Result<Self, SetNumError> {
        if n > UNARY_LIMIT as u128 {
            return Err(SetNumError::TooLarge(n));
        }
        Ok(UnaryNumber(n as u64))
    }
}

impl fmt::Display for UnaryNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&"/".repeat(self.0 as usize))
    }
}

impl FromStr for UnaryNumber {
    type Err = SetNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if !s.chars().all(|c| c == '/') {
            return Err(SetNumError::NotUnary(s.to_owned()));
        }
        UnaryNumber::new(s.len() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// One stroke moved onto the accumulator.
    Transfer,
    /// One stroke taken away.
    Remove,
    AddIteration,
    SubtractIteration,
    MultiplyIteration,
    /// Difference between consecutive terms of a bounded sum or product.
    TermChange,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Transfer => "transfer",
            StepKind::Remove => "remove",
            StepKind::AddIteration => "add-iteration",
            StepKind::SubtractIteration => "subtract-iteration",
            StepKind::MultiplyIteration => "multiply-iteration",
            StepKind::TermChange => "term-change",
        }
    }
}

/// `value` is the running result after the step, or the change for
/// [`StepKind::TermChange`]. Iteration steps come before the steps nested
/// inside them, which sit one level deeper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: u32,
    pub kind: StepKind,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTrace {
    pub operation: String,
    pub steps: Vec<TraceStep>,
}

impl OperationTrace {
    fn new(operation: &str) -> Self {
        OperationTrace { operation: operation.into(), steps: Vec::new() }
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    /// Steps of `kind` at nesting level `depth`.
    pub fn count_at(&self, depth: u32, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.depth == depth && s.kind == kind).count()
    }

    pub fn max_depth(&self) -> Option<u32> {
        self.steps.iter().map(|s| s.depth).max()
    }

    /// One line per step: `<depth> <kind> <value>`.
    pub fn dump(&self) -> String {
        self.steps.iter().map(|s| format!("{} {} {}\n", s.depth, s.kind.name(), s.value)).collect()
    }

    fn push(&mut self, depth: u32, kind: StepKind, value: u64) {
        self.steps.push(TraceStep { depth, kind, value: value as i64 });
    }
}

fn add_into(acc: u64, b: u64, depth: u32, trace: &mut OperationTrace) -> Result<u64, SetNumError> {
    let total = UnaryNumber::checked(acc as u128 + b as u128)?.count();
    for moved in 1..=b {
        trace.push(depth, StepKind::Transfer, acc + moved);
    }
    Ok(total)
}

fn multiply_into(a: u64, b: u64, depth: u32, trace: &mut OperationTrace) -> Result<u64, SetNumError> {
    UnaryNumber::checked(a as u128 * b as u128)?;
    let mut acc = 0;
    for _ in 0..b {
        trace.push(depth, StepKind::AddIteration, acc + a);
        acc = add_into(acc, a, depth + 1, trace)?;
    }
    Ok(acc)
}

/// Moves the strokes of `b` onto `a` one at a time.
pub fn unary_add(a: UnaryNumber, b: UnaryNumber) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    let mut trace = OperationTrace::new("add");
    let n = add_into(a.0, b.0, 0, &mut trace)?;
    Ok((UnaryNumber(n), trace))
}

pub fn unary_subtract(a: UnaryNumber, b: UnaryNumber) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    if a.0 < b.0 {
        return Err(SetNumError::Underflow { a: a.0, b: b.0 });
    }
    let mut trace = OperationTrace::new("subtract");
    for taken in 1..=b.0 {
        trace.push(0, StepKind::Remove, a.0 - taken);
    }
    Ok((UnaryNumber(a.0 - b.0), trace))
}

/// `b` add-iterations of `a`, starting from 0.
pub fn unary_multiply(a: UnaryNumber, b: UnaryNumber) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    let mut trace = OperationTrace::new("multiply");
    let n = multiply_into(a.0, b.0, 0, &mut trace)?;
    Ok((UnaryNumber(n), trace))
}

/// Subtract-iterations of `b` until less than `b` remains.
/// Returns quotient, remainder and the trace.
pub fn unary_divide(a: UnaryNumber, b: UnaryNumber) -> Result<(UnaryNumber, UnaryNumber, OperationTrace), SetNumError> {
    if b.0 == 0 {
        return Err(SetNumError::DivisionByZero);
    }
    let mut trace = OperationTrace::new("divide");
    let mut rest = a.0;
    let mut quotient = 0;
    while rest >= b.0 {
        trace.push(0, StepKind::SubtractIteration, rest - b.0);
        for taken in 1..=b.0 {
            trace.push(1, StepKind::Remove, rest - taken);
        }
        rest -= b.0;
        quotient += 1;
    }
    Ok((UnaryNumber(quotient), UnaryNumber(rest), trace))
}

/// `k` multiply-iterations by `a`, starting from 1.
pub fn unary_power(a: UnaryNumber, k: u64) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    if a.0 == 0 && k == 0 {
        return Err(SetNumError::Indeterminate);
    }
    if a.0 > 1 {
        let exact = (a.0 as u128).checked_pow(k.min(64) as u32).unwrap_or(u128::MAX);
        if k > 64 || exact > UNARY_LIMIT as u128 {
            return Err(SetNumError::TooLarge(exact));
        }
    }
    let mut trace = OperationTrace::new("power");
    let mut acc = 1;
    for _ in 0..k {
        trace.push(0, StepKind::MultiplyIteration, acc * a.0);
        // acc copies of a, i.e. a add-iterations of acc
        acc = multiply_into(acc, a.0, 1, &mut trace)?;
    }
    Ok((UnaryNumber(acc), trace))
}

/// Alternates multiplying by a counter and subtracting one from it.
pub fn unary_factorial(n: UnaryNumber) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    let exact = (1..=n.0 as u128).try_fold(1u128, |acc, k| {
        let next = acc * k;
        (next <= UNARY_LIMIT as u128).then_some(next).ok_or(next)
    });
    if let Err(big) = exact {
        return Err(SetNumError::TooLarge(big));
    }
    let mut trace = OperationTrace::new("factorial");
    let mut acc = 1;
    let mut k = n.0;
    while k > 0 {
        trace.push(0, StepKind::MultiplyIteration, acc * k);
        acc = multiply_into(acc, k, 1, &mut trace)?;
        trace.push(0, StepKind::SubtractIteration, k - 1);
        trace.push(1, StepKind::Remove, k - 1);
        k -= 1;
    }
    Ok((UnaryNumber(acc), trace))
}

fn terms(lo: i64, hi: i64, term: impl Fn(i64) -> f64) -> Result<Vec<u64>, SetNumError> {
    if lo > hi {
        return Err(SetNumError::EmptyRange { lo, hi });
    }
    (lo..=hi)
        .map(|index| {
            let value = term(index);
            if !value.is_finite() || value.fract() != 0.0 {
                Err(SetNumError::NonIntegerTerm { index, value })
            } else if value < 0.0 {
                Err(SetNumError::NegativeTerm { index, value })
            } else if value > UNARY_LIMIT as f64 {
                Err(SetNumError::TooLarge(value as u128))
            } else {
                Ok(value as u64)
            }
        })
        .collect()
}

fn term_change(trace: &mut OperationTrace, prev: Option<u64>, t: u64) {
    if let Some(p) = prev {
        trace.steps.push(TraceStep { depth: 0, kind: StepKind::TermChange, value: t as i64 - p as i64 });
    }
}

/// Sum of `term(i)` for `i` in `lo..=hi`, one add-iteration per index.
pub fn bounded_sum(lo: i64, hi: i64, term: impl Fn(i64) -> f64) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    let values = terms(lo, hi, term)?;
    let mut trace = OperationTrace::new("sum");
    let mut acc = 0;
    let mut prev = None;
    for t in values {
        term_change(&mut trace, prev, t);
        trace.push(0, StepKind::AddIteration, acc + t);
        acc = add_into(acc, t, 1, &mut trace)?;
        prev = Some(t);
    }
    Ok((UnaryNumber(acc), trace))
}

/// Product of `term(i)` for `i` in `lo..=hi`, one multiply-iteration per
/// index.
pub fn bounded_product(
    lo: i64,
    hi: i64,
    term: impl Fn(i64) -> f64,
) -> Result<(UnaryNumber, OperationTrace), SetNumError> {
    let values = terms(lo, hi, term)?;
    let mut trace = OperationTrace::new("product");
    let mut acc = 1;
    let mut prev = None;
    for t in values {
        term_change(&mut trace, prev, t);
        let next = UnaryNumber::checked(acc as u128 * t as u128)?.count();
        trace.push(0, StepKind::MultiplyIteration, next);
        acc = multiply_into(acc, t, 1, &mut trace)?;
        prev = Some(t);
    }
    Ok((UnaryNumber(acc), trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> UnaryNumber {
        UnaryNumber::new(n).unwrap()
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(u(7).to_string(), "///////");
        assert_eq!("///".parse::<UnaryNumber>().unwrap(), u(3));
        assert_eq!("".parse::<UnaryNumber>().unwrap(), u(0));
        assert!("//x".parse::<UnaryNumber>().is_err());
        assert_eq!(UnaryNumber::new(UNARY_LIMIT + 1), Err(SetNumError::TooLarge(1_000_001)));
    }

    #[test]
    fn add() {
        let (n, t) = unary_add(u(3), u(7)).unwrap();
        assert_eq!(n, u(10));
        assert_eq!(t.step_count(), 7);
        assert_eq!(t.count(StepKind::Transfer), 7);
        assert_eq!(unary_add(u(4), u(0)).unwrap().1.step_count(), 0);
        assert_eq!(unary_add(u(0), u(5)).unwrap().1.step_count(), 5);
    }

    #[test]
    fn subtract() {
        let (n, t) = unary_subtract(u(7), u(3)).unwrap();
        assert_eq!((n, t.step_count()), (u(4), 3));
        assert_eq!(unary_subtract(u(3), u(7)), Err(SetNumError::Underflow { a: 3, b: 7 }));
    }

    #[test]
    fn multiply() {
        let (n, t) = unary_multiply(u(3), u(10)).unwrap();
        assert_eq!(n, u(30));
        assert_eq!(t.count_at(0, StepKind::AddIteration), 10);
        assert_eq!(t.count_at(1, StepKind::Transfer), 30);
        assert_eq!(unary_multiply(u(5), u(0)).unwrap().1.step_count(), 0);
        assert_eq!(unary_multiply(u(1), u(4)).unwrap().1.count(StepKind::AddIteration), 4);
    }

    #[test]
    fn divide() {
        let (q, r, t) = unary_divide(u(12), u(3)).unwrap();
        assert_eq!((q, r), (u(4), u(0)));
        assert_eq!(t.count_at(0, StepKind::SubtractIteration), 4);
        let (q, r, _) = unary_divide(u(7), u(3)).unwrap();
        assert_eq!((q, r), (u(2), u(1)));
        assert_eq!(unary_divide(u(7), u(0)).unwrap_err(), SetNumError::DivisionByZero);
    }

    #[test]
    fn power_has_three_levels() {
        let (n, t) = unary_power(u(2), 3).unwrap();
        assert_eq!(n, u(8));
        assert_eq!(t.count_at(0, StepKind::MultiplyIteration), 3);
        assert_eq!(t.max_depth(), Some(2));
        assert_eq!(t.count_at(2, StepKind::Transfer), 2 + 4 + 8);
        assert_eq!(unary_power(u(10), 2).unwrap().0, u(100));
        assert_eq!(unary_power(u(9), 0).unwrap().1.step_count(), 0);
        assert_eq!(unary_power(u(0), 0).unwrap_err(), SetNumError::Indeterminate);
        assert!(matches!(unary_power(u(10), 7), Err(SetNumError::TooLarge(_))));
        assert!(matches!(unary_power(u(2), 1000), Err(SetNumError::TooLarge(_))));
    }

    #[test]
    fn factorial() {
        assert_eq!(unary_factorial(u(4)).unwrap().0, u(24));
        assert_eq!(unary_factorial(u(0)).unwrap(), (u(1), OperationTrace::new("factorial")));
        let (n, t) = unary_factorial(u(6)).unwrap();
        assert_eq!(n, u(720));
        assert_eq!(t.count_at(0, StepKind::MultiplyIteration), 6);
        assert_eq!(t.count_at(0, StepKind::SubtractIteration), 6);
        assert!(matches!(unary_factorial(u(10)), Err(SetNumError::TooLarge(_))));
    }

    #[test]
    fn bounded() {
        let (n, t) = bounded_sum(1, 5, |i| i as f64).unwrap();
        assert_eq!(n, u(15));
        assert_eq!(t.count_at(0, StepKind::AddIteration), 5);
        assert_eq!(t.count(StepKind::TermChange), 4);
        assert_eq!(bounded_product(1, 4, |i| i as f64).unwrap().0, u(24));
        assert_eq!(bounded_sum(3, 2, |i| i as f64).unwrap_err(), SetNumError::EmptyRange { lo: 3, hi: 2 });
        assert!(matches!(bounded_sum(1, 3, |i| 1.0 / i as f64), Err(SetNumError::NonIntegerTerm { index: 2, .. })));
        assert!(matches!(bounded_sum(1, 3, |i| -(i as f64)), Err(SetNumError::NegativeTerm { index: 1, .. })));
    }

    #[test]
    fn dump_format() {
        let (_, t) = unary_multiply(u(2), u(1)).unwrap();
        assert_eq!(t.dump(), "0 add-iteration 2\n1 transfer 1\n1 transfer 2\n");
    }
}
