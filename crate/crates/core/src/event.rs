//! State spaces and events (subsets of states as bit vectors).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits;

/// An ordered list of distinct state labels. State `i` is bit `i` of every
/// [`Event`] over this space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    names: Arc<[String]>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > limits::MAX_STATES {
            return Err(Error::StateCount {
                got: names.len(),
                max: limits::MAX_STATES,
            });
        }
        limits::ensure("state space", names.len(), limits::MAX_STATES)?;
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        Ok(StateSpace {
            names: names.into(),
        })
    }

    /// States named `a`, `b`, `c`, ...
    pub fn alphabetic(n: usize) -> Result<Self> {
        StateSpace::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// Number of events, 2ⁿ.
    pub fn event_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn empty(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn singleton(&self, state: usize) -> Event {
        Event::singleton(self.len(), state)
    }

    /// The event made of the named states.
    pub fn event<I, S>(&self, names: I) -> Result<Event>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for name in names {
            bits |= 1 << self.index_of(name.as_ref())?;
        }
        Event::from_bits(self.len(), bits)
    }

    /// Every event in canonical index order.
    pub fn events(&self) -> impl DoubleEndedIterator<Item = Event> + ExactSizeIterator {
        let width = self.len() as u8;
        (0..self.event_count() as u32).map(move |bits| Event { bits, width })
    }

    /// `{a,b}` style rendering; the empty event renders as `{}`.
    pub fn format_event(&self, event: Event) -> String {
        let members: Vec<&str> = event.states().map(|s| self.name(s)).collect();
        format!("{{{}}}", members.join(","))
    }
}

impl fmt::Debug for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A subset of a state space. The canonical index of an event is the integer
/// whose binary digits are its membership bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    bits: u32,
    width: u8,
}

impl Event {
    pub fn empty(width: usize) -> Self {
        Event {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        Event {
            bits: mask(width),
            width: width as u8,
        }
    }

    pub fn singleton(width: usize, state: usize) -> Self {
        assert!(
            state < width,
            "state {state} out of range for width {width}"
        );
        Event {
            bits: 1 << state,
            width: width as u8,
        }
    }

    pub fn from_bits(width: usize, bits: u32) -> Result<Self> {
        if width > limits::MAX_STATES || bits & !mask(width) != 0 {
            return Err(Error::EventOutOfRange {
                bits: bits as u64,
                width,
            });
        }
        Ok(Event {
            bits,
            width: width as u8,
        })
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(width: usize, states: I) -> Result<Self> {
        let mut bits = 0u64;
        for s in states {
            if s >= width {
                return Err(Error::EventOutOfRange {
                    bits: 1 << s.min(63),
                    width,
                });
            }
            bits |= 1 << s;
        }
        Event::from_bits(width, bits as u32)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Canonical index (row/column of relation matrices).
    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn contains(self, state: usize) -> bool {
        state < self.width() && self.bits >> state & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.width())
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Event) -> bool {
        self.bits & other.bits == 0
    }

    pub fn complement(self) -> Event {
        Event {
            bits: !self.bits & mask(self.width()),
            width: self.width,
        }
    }

    pub fn union(self, other: Event) -> Result<Event> {
        self.combine(other, |a, b| a | b)
    }

    pub fn intersection(self, other: Event) -> Result<Event> {
        self.combine(other, |a, b| a & b)
    }

    pub fn difference(self, other: Event) -> Result<Event> {
        self.combine(other, |a, b| a & !b)
    }

    fn combine(self, other: Event, op: impl Fn(u32, u32) -> u32) -> Result<Event> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        Ok(Event {
            bits: op(self.bits, other.bits),
            width: self.width,
        })
    }

    /// Member states in increasing index order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.width()).filter(move |&s| bits >> s & 1 == 1)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event({:0w$b})", self.bits, w = self.width().max(1))
    }
}

pub(crate) fn mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> StateSpace {
        StateSpace::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn set_algebra_examples() {
        let s = abc();
        let ab = s.event(["a", "b"]).unwrap();
        let bc = s.event(["b", "c"]).unwrap();
        assert_eq!(ab.complement(), s.event(["c"]).unwrap());
        assert_eq!(ab.intersection(bc).unwrap(), s.event(["b"]).unwrap());
        let a = s.event(["a"]).unwrap();
        assert_eq!(a.union(s.empty()).unwrap(), a);
        assert_eq!(ab.difference(bc).unwrap(), a);
    }

    #[test]
    fn mismatched_widths_are_rejected() {
        let a = Event::singleton(3, 0);
        let b = Event::singleton(4, 0);
        assert_eq!(a.union(b), Err(Error::WidthMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn bits_beyond_width_are_rejected() {
        assert!(Event::from_bits(3, 0b1000).is_err());
        assert!(Event::from_bits(3, 0b111).unwrap().is_full());
        assert!(Event::from_states(2, [0, 2]).is_err());
    }

    #[test]
    fn space_validation() {
        assert!(matches!(
            StateSpace::new(["a", "a"]),
            Err(Error::DuplicateState(_))
        ));
        assert_eq!(StateSpace::new([""; 1]), Err(Error::EmptyLabel));
        assert!(StateSpace::new(Vec::<String>::new()).is_err());
        assert!(StateSpace::alphabetic(25).is_err());
        assert_eq!(abc().index_of("c").unwrap(), 2);
        assert_eq!(abc().event(["d"]), Err(Error::UnknownState("d".into())));
    }

    #[test]
    fn formatting() {
        let s = abc();
        assert_eq!(s.format_event(s.event(["c", "a"]).unwrap()), "{a,c}");
        assert_eq!(s.format_event(s.empty()), "{}");
    }
}
