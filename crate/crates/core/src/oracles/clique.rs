use super::word_rows;
use crate::error::Result;
use crate::graph::Graph;

pub const DEFAULT_OMEGA_LIMIT: usize = 40;

/// Clique number by branch and bound with greedy-colouring bounds.
pub fn omega_exact(g: &Graph, limit: usize) -> Result<usize> {
    let adj = word_rows(g, limit)?;
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut best = 0;
    expand(&adj, 0, all, &mut best);
    Ok(best)
}

fn expand(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let (order, colours) = colour_sort(adj, cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if size + colours[i] <= *best {
            return;
        }
        let v = order[i];
        expand(adj, size + 1, cand & adj[v], best);
        cand &= !(1u64 << v);
    }
}

/// Greedy colouring of `cand`; vertices come back in colour order along
/// with their colour numbers (1-based), which bound the clique size.
fn colour_sort(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colours = Vec::with_capacity(order.capacity());
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !adj[v];
            uncoloured &= !(1u64 << v);
            order.push(v);
            colours.push(colour);
        }
    }
    (order, colours)
}
