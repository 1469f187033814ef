//! Functional cells: a cell with an initial state, named channels and
//! sockets, driven by signals that toggle open channels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::cell::{Cell, Channel, PortAssignment};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::graph::GraphDocument;
use crate::kekule::kekule_cell;

/// One signal attempt. A refused signal leaves the state unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalStep {
    pub channel: String,
    pub before: PortAssignment,
    pub after: PortAssignment,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalCell {
    cell: Cell,
    initial: PortAssignment,
    current: PortAssignment,
    channels: BTreeMap<String, Channel>,
    sockets: BTreeMap<String, (String, String)>,
    trace: Vec<SignalStep>,
}

impl FunctionalCell {
    pub fn new(
        cell: Cell,
        initial: PortAssignment,
        channels: BTreeMap<String, Channel>,
        sockets: BTreeMap<String, (String, String)>,
    ) -> Result<Self> {
        cell.ports().check(&initial)?;
        if !cell.contains(&initial) {
            return Err(Error::InvalidFunctionalCell(format!(
                "initial state {} is not in the cell",
                cell.format(&initial)
            )));
        }
        for c in channels.values() {
            cell.ports().check(c.as_assignment())?;
        }
        let m = Gf2Matrix::from_rows(cell.ports().len(), channels.values().map(|c| c.as_assignment().clone()).collect());
        if m.rank() != channels.len() {
            return Err(Error::InvalidFunctionalCell("channels are linearly dependent".into()));
        }
        for (name, (a, b)) in &sockets {
            let ca = channels.get(a).ok_or_else(|| Error::UnknownChannel(a.clone()))?;
            let cb = channels.get(b).ok_or_else(|| Error::UnknownChannel(b.clone()))?;
            if ca.as_assignment().and(cb.as_assignment()).count() != 1 {
                return Err(Error::InvalidFunctionalCell(format!(
                    "socket `{name}`: channels `{a}` and `{b}` must share exactly one port"
                )));
            }
        }
        Ok(FunctionalCell {
            cell,
            current: initial.clone(),
            initial,
            channels,
            sockets,
            trace: Vec::new(),
        })
    }

    /// Convenience constructor from port labels: channels as
    /// `(name, port, port)` and sockets as `(name, channel, channel)`.
    pub fn from_labels(
        cell: Cell,
        initial: &[&str],
        channels: &[(&str, &str, &str)],
        sockets: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let initial = cell.assignment(initial)?;
        let channels = channels
            .iter()
            .map(|&(n, p, q)| Ok((n.to_string(), Channel::from_labels(cell.ports(), p, q)?)))
            .collect::<Result<_>>()?;
        let sockets = sockets
            .iter()
            .map(|&(n, a, b)| (n.to_string(), (a.to_string(), b.to_string())))
            .collect();
        FunctionalCell::new(cell, initial, channels, sockets)
    }

    /// Builds the functional cell of a graph document; the initial state
    /// defaults to the empty assignment.
    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let cell = kekule_cell(doc.graph())?;
        let initial: Vec<&str> = doc.initial.iter().flatten().map(String::as_str).collect();
        let channels: Vec<(&str, &str, &str)> = doc
            .channels
            .iter()
            .map(|(n, (p, q))| (n.as_str(), p.as_str(), q.as_str()))
            .collect();
        let sockets: Vec<(&str, &str, &str)> = doc
            .sockets
            .iter()
            .map(|(n, (a, b))| (n.as_str(), a.as_str(), b.as_str()))
            .collect();
        FunctionalCell::from_labels(cell, &initial, &channels, &sockets)
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn initial(&self) -> &PortAssignment {
        &self.initial
    }

    pub fn current(&self) -> &PortAssignment {
        &self.current
    }

    pub fn channels(&self) -> &BTreeMap<String, Channel> {
        &self.channels
    }

    pub fn sockets(&self) -> &BTreeMap<String, (String, String)> {
        &self.sockets
    }

    pub fn trace(&self) -> &[SignalStep] {
        &self.trace
    }

    pub fn format(&self, k: &PortAssignment) -> String {
        self.cell.format(k)
    }

    pub fn channel(&self, name: &str) -> Result<&Channel> {
        self.channels.get(name).ok_or_else(|| Error::UnknownChannel(name.to_string()))
    }

    /// `k0 ⊕ c1 ⊕ ... ⊕ cn` for the named channels.
    pub fn combine<S: AsRef<str>>(&self, names: &[S]) -> Result<PortAssignment> {
        let mut k = self.initial.clone();
        for n in names {
            k.xor_assign(self.channel(n.as_ref())?.as_assignment());
        }
        Ok(k)
    }

    fn open_at(&self, state: &PortAssignment, c: &Channel) -> bool {
        self.cell.contains(&state.xor(c.as_assignment()))
    }

    pub fn is_open(&self, name: &str) -> Result<bool> {
        Ok(self.open_at(&self.current, self.channel(name)?))
    }

    pub fn open_channel_report(&self) -> BTreeMap<String, bool> {
        self.channels
            .iter()
            .map(|(n, c)| (n.clone(), self.open_at(&self.current, c)))
            .collect()
    }

    /// Sends a signal through `name`: toggles it if open, otherwise records
    /// a refusal.
    pub fn signal(&mut self, name: &str) -> Result<SignalStep> {
        let c = self.channel(name)?.clone();
        let before = self.current.clone();
        let next = before.xor(c.as_assignment());
        let accepted = self.cell.contains(&next);
        if accepted {
            self.current = next;
        }
        let step = SignalStep {
            channel: name.to_string(),
            before,
            after: self.current.clone(),
            accepted,
        };
        self.trace.push(step.clone());
        Ok(step)
    }

    fn socket_channel(&self, socket: &str, state: &PortAssignment) -> Result<String> {
        let (a, b) = self.sockets.get(socket).ok_or_else(|| Error::UnknownSocket(socket.to_string()))?;
        let open: Vec<&String> = [a, b]
            .into_iter()
            .filter(|n| self.open_at(state, &self.channels[n.as_str()]))
            .collect();
        match open.as_slice() {
            [one] => Ok((*one).clone()),
            _ => Err(Error::SocketInvariant {
                socket: socket.to_string(),
                state: self.format(state),
                open: open.len(),
            }),
        }
    }

    /// Signals whichever channel of the socket is open.
    pub fn signal_socket(&mut self, socket: &str) -> Result<(String, SignalStep)> {
        let name = self.socket_channel(socket, &self.current.clone())?;
        let step = self.signal(&name)?;
        Ok((name, step))
    }

    pub fn reset(&mut self) {
        self.current = self.initial.clone();
        self.trace.clear();
    }

    /// States reachable from the initial state, in display order.
    pub fn reachable_states(&self) -> Vec<PortAssignment> {
        let channels: Vec<PortAssignment> = self.channels.values().map(|c| c.as_assignment().clone()).collect();
        let mut out: Vec<_> = reachable_from(&self.cell, &self.initial, &channels).into_iter().collect();
        out.sort_by_key(|k| k.display_key());
        out
    }

    /// Checks every socket in every reachable state.
    pub fn check_socket_invariant(&self) -> Result<()> {
        for state in self.reachable_states() {
            for socket in self.sockets.keys() {
                self.socket_channel(socket, &state)?;
            }
        }
        Ok(())
    }

    /// Replays every input combination from the initial state; combination
    /// `m` signals input `i` iff bit `i` of `m` is set, and `truth[m]` is the
    /// expected openness of `output` afterwards.
    pub fn verify_gate(&self, inputs: &[&str], output: &str, truth: &[bool]) -> Result<GateReport> {
        if truth.len() != 1 << inputs.len() {
            return Err(Error::Precondition(format!(
                "truth table needs {} rows, got {}",
                1 << inputs.len(),
                truth.len()
            )));
        }
        for n in inputs.iter().chain([&output]) {
            self.channel(n)?;
        }
        let mut violations = Vec::new();
        for (m, &expected) in truth.iter().enumerate() {
            let mut fc = self.clone();
            fc.reset();
            let pattern: Vec<bool> = (0..inputs.len()).map(|i| m >> i & 1 == 1).collect();
            let mut refused = None;
            for (i, &on) in pattern.iter().enumerate() {
                if on && !fc.signal(inputs[i])?.accepted {
                    refused = Some(inputs[i].to_string());
                    break;
                }
            }
            let found = if refused.is_some() { None } else { Some(fc.is_open(output)?) };
            if found != Some(expected) {
                violations.push(GateViolation {
                    inputs: pattern,
                    expected,
                    found,
                    refused,
                });
            }
        }
        Ok(GateReport { rows: truth.len(), violations })
    }

    /// The accepted signals so far, one `signal <name>` line each.
    pub fn trace_script(&self) -> String {
        let mut out = String::new();
        for step in self.trace.iter().filter(|s| s.accepted) {
            let _ = writeln!(out, "signal {}", step.channel);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateViolation {
    pub inputs: Vec<bool>,
    pub expected: bool,
    /// `None` when an input was refused.
    pub found: Option<bool>,
    pub refused: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateReport {
    pub rows: usize,
    pub violations: Vec<GateViolation>,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Closure of `{start}` under toggling the given channels within `cell`.
pub fn reachable_from(cell: &Cell, start: &PortAssignment, channels: &[PortAssignment]) -> BTreeSet<PortAssignment> {
    let mut seen = BTreeSet::new();
    if !cell.contains(start) {
        return seen;
    }
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(k) = queue.pop_front() {
        for c in channels {
            let next = k.xor(c);
            if cell.contains(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Whether `cell` with initial state `k0`, socket `(a, b)` and output `t`
/// behaves as a Y-cell: the reachable states are exactly
/// `k0 ⊕ {∅, A, A⊕T, A⊕B⊕T}`.
pub fn is_ycell(cell: &Cell, k0: &PortAssignment, a: &PortAssignment, b: &PortAssignment, t: &PortAssignment) -> bool {
    let reach = reachable_from(cell, k0, &[a.clone(), b.clone(), t.clone()]);
    let at = a.xor(t);
    let abt = at.xor(b);
    let expected: BTreeSet<_> = [k0.clone(), k0.xor(a), k0.xor(&at), k0.xor(&abt)].into_iter().collect();
    reach == expected
}
