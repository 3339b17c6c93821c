use std::collections::HashMap;

use serde::Serialize;

use super::{CoxeterSystem, Element, Gen};
use crate::error::{Error, Result};
use crate::limits;

/// All elements of length at most `radius`, with the Cayley graph edges
/// `{w, ws}` between them.
#[derive(Debug, Clone, Serialize)]
pub struct CayleyBall {
    pub radius: usize,
    /// Elements in ShortLex order.
    pub elements: Vec<Element>,
    /// `(i, j, s)` with `elements[j] = elements[i] * s` and `i < j`.
    pub edges: Vec<(usize, usize, Gen)>,
    /// True when the ball already contains the whole (finite) group.
    pub exhausted: bool,
    #[serde(skip)]
    index: HashMap<Element, usize>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Number of elements of each length `0..=radius`.
    pub fn length_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.radius + 1];
        for e in &self.elements {
            h[e.length()] += 1;
        }
        h
    }
}

impl CoxeterSystem {
    pub fn cayley_ball(&self, radius: usize) -> Result<CayleyBall> {
        let all: Vec<Gen> = self.generators().collect();
        self.ball_in(&all, radius, limits::max_chambers())
    }

    /// Breadth-first ball in the standard parabolic `W_T`.
    pub(crate) fn ball_in(&self, subset: &[Gen], radius: usize, cap: usize) -> Result<CayleyBall> {
        let mut elements = vec![Element::identity()];
        let mut index = HashMap::from([(Element::identity(), 0usize)]);
        let mut edges = Vec::new();
        let mut frontier = vec![0usize];
        let mut exhausted = false;
        for _ in 0..radius {
            let mut next = Vec::new();
            for &i in &frontier {
                for &s in subset {
                    let ws = self.multiply_gen(&elements[i], s)?;
                    if ws.length() < elements[i].length() {
                        continue; // edge already recorded from the shorter side
                    }
                    let j = match index.get(&ws) {
                        Some(&j) => j,
                        None => {
                            if elements.len() >= cap {
                                return Err(Error::ResourceLimit {
                                    what: "Cayley ball size",
                                    limit: cap,
                                });
                            }
                            let j = elements.len();
                            index.insert(ws.clone(), j);
                            elements.push(ws);
                            next.push(j);
                            j
                        }
                    };
                    edges.push((i, j, s));
                }
            }
            if next.is_empty() {
                exhausted = true;
                break;
            }
            frontier = next;
        }
        if !exhausted && !frontier.is_empty() {
            // one more probe: does any frontier element have a longer neighbour?
            exhausted = true;
            'probe: for &i in &frontier {
                for &s in subset {
                    if self.multiply_gen(&elements[i], s)?.length() > elements[i].length() {
                        exhausted = false;
                        break 'probe;
                    }
                }
            }
        }

        // canonical ShortLex order
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
        let mut relabel = vec![0; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let elements: Vec<Element> = order.iter().map(|&i| elements[i].clone()).collect();
        let mut edges: Vec<(usize, usize, Gen)> = edges
            .into_iter()
            .map(|(i, j, s)| {
                let (a, b) = (relabel[i], relabel[j]);
                (a.min(b), a.max(b), s)
            })
            .collect();
        edges.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(CayleyBall {
            radius,
            elements,
            edges,
            exhausted,
            index,
        })
    }

    /// All elements of the finite parabolic `W_T`, or `None` when more than
    /// `cap` elements turn up (the subgroup is then treated as infinite).
    pub fn enumerate_parabolic(&self, subset: &[Gen], cap: usize) -> Result<Option<Vec<Element>>> {
        let mut radius = 1;
        loop {
            match self.ball_in(subset, radius, cap + 1) {
                Ok(ball) if ball.exhausted => return Ok(Some(ball.elements)),
                Ok(ball) if ball.len() > cap => return Ok(None),
                Ok(_) => radius *= 2,
                Err(Error::ResourceLimit {
                    what: "Cayley ball size",
                    ..
                }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
    }
}
