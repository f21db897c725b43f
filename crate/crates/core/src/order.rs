//! Prefix orders: an ordered prefix of placed vertices followed by a pool
//! of mutually incomparable unordered vertices.
//!
//! The comparison `a < b` holds exactly when `a` is placed and `b` is
//! either unplaced or placed later. Placed vertices therefore precede every
//! unplaced vertex, and two unplaced vertices never compare. When the
//! prefix covers all vertices the order is total.

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("vertex id {id} out of range for n = {n}")]
    OutOfRange { id: usize, n: usize },
    #[error("vertex {0} placed twice")]
    Duplicate(VertexId),
    #[error("order is not total: {placed} of {n} vertices placed")]
    NotTotal { placed: usize, n: usize },
    #[error("line {line}: bad vertex id '{token}'")]
    BadToken { line: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixOrder {
    placed: Vec<VertexId>,
    position: Vec<Option<u32>>,
}

impl PrefixOrder {
    /// Empty prefix over `n` vertices: everything unordered.
    pub fn empty(n: usize) -> Self {
        PrefixOrder { placed: Vec::new(), position: vec![None; n] }
    }

    /// Prefix with the given vertices placed left to right.
    pub fn from_prefix(n: usize, prefix: &[VertexId]) -> Result<Self, OrderError> {
        let mut order = PrefixOrder::empty(n);
        for &u in prefix {
            order.place(u)?;
        }
        Ok(order)
    }

    /// Total order over all of `0..order.len()`.
    pub fn total(order: Vec<VertexId>) -> Result<Self, OrderError> {
        let sigma = PrefixOrder::from_prefix(order.len(), &order)?;
        debug_assert!(sigma.is_total());
        Ok(sigma)
    }

    /// Appends `u` to the placed prefix.
    pub fn place(&mut self, u: VertexId) -> Result<(), OrderError> {
        let n = self.n();
        if u >= n {
            return Err(OrderError::OutOfRange { id: u, n });
        }
        if self.position[u].is_some() {
            return Err(OrderError::Duplicate(u));
        }
        self.position[u] = Some(self.placed.len() as u32);
        self.placed.push(u);
        Ok(())
    }

    /// Removes and returns the most recently placed vertex, if any. The
    /// inverse of [`place`](Self::place); search code backtracks with it.
    pub fn pop(&mut self) -> Option<VertexId> {
        let u = self.placed.pop()?;
        self.position[u] = None;
        Some(u)
    }

    pub fn n(&self) -> usize {
        self.position.len()
    }

    /// Number of placed vertices.
    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.placed.len() == self.n()
    }

    pub fn is_placed(&self, u: VertexId) -> bool {
        self.position[u].is_some()
    }

    /// Position of `u` in the prefix, if placed.
    pub fn position(&self, u: VertexId) -> Option<usize> {
        self.position[u].map(|p| p as usize)
    }

    /// Whether `a < b` in the prefix order.
    pub fn precedes(&self, a: VertexId, b: VertexId) -> bool {
        match self.position[a] {
            None => false,
            Some(pa) => match self.position[b] {
                None => true,
                Some(pb) => pa < pb,
            },
        }
    }

    /// Placed vertices, leftmost first.
    pub fn placed(&self) -> &[VertexId] {
        &self.placed
    }

    pub fn unordered(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).filter(|&u| self.position[u].is_none())
    }

    /// Parses an order file: whitespace-separated vertex ids, leftmost
    /// first. `#` starts a comment.
    pub fn parse(text: &str, n: usize) -> Result<Self, OrderError> {
        let mut order = PrefixOrder::empty(n);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for token in line.split_ascii_whitespace() {
                let u: VertexId = token.parse().map_err(|_| OrderError::BadToken {
                    line: idx + 1,
                    token: token.to_string(),
                })?;
                order.place(u)?;
            }
        }
        Ok(order)
    }

    /// Serializes the placed prefix as an order file.
    pub fn to_order_file(&self) -> String {
        let mut out = self
            .placed
            .iter()
            .map(|u| u.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push('\n');
        out
    }
}
