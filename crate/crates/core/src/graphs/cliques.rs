use super::{Bitset, Graph};

/// Number of `t`-element vertex sets that are pairwise adjacent. Loops are ignored.
pub fn count_cliques(g: &Graph, t: usize) -> u64 {
    count_cliques_in(g, &Bitset::full(g.order()), t)
}

/// Number of `t`-cliques whose vertices all lie in `cand`.
pub fn count_cliques_in(g: &Graph, cand: &Bitset, t: usize) -> u64 {
    match t {
        0 => 1,
        1 => cand.count() as u64,
        _ => {
            let mut scratch = vec![Bitset::new(g.order()); t];
            extend(g, cand, t, &mut scratch)
        }
    }
}

/// Counts cliques of size `need` inside `cand` using vertices in increasing order.
fn extend(g: &Graph, cand: &Bitset, need: usize, scratch: &mut [Bitset]) -> u64 {
    if need == 1 {
        return cand.count() as u64;
    }
    if need == 2 {
        let twice: usize = cand.iter().map(|v| g.neighbors(v).intersection_count(cand)).sum();
        return twice as u64 / 2;
    }
    let (head, tail) = scratch.split_first_mut().expect("scratch depth");
    let mut total = 0;
    let mut rest = cand.clone();
    for v in cand.iter() {
        rest.remove(v);
        rest.intersection_into(g.neighbors(v), head);
        if head.count() + 1 >= need {
            total += extend(g, head, need - 1, tail);
        }
    }
    total
}

/// `counts[j]` is the number of `j`-cliques for `j = 0..=tmax`.
pub fn count_cliques_upto(g: &Graph, tmax: usize) -> Vec<u64> {
    count_cliques_upto_in(g, &Bitset::full(g.order()), tmax)
}

/// As [`count_cliques_upto`], restricted to cliques inside `cand`.
pub fn count_cliques_upto_in(g: &Graph, cand: &Bitset, tmax: usize) -> Vec<u64> {
    let mut counts = vec![0u64; tmax + 1];
    counts[0] = 1;
    if tmax == 0 {
        return counts;
    }
    let mut scratch = vec![Bitset::new(g.order()); tmax];
    let mut rest = cand.clone();
    for v in cand.iter() {
        rest.remove(v);
        counts[1] += 1;
        if tmax >= 2 {
            let (head, tail) = scratch.split_first_mut().unwrap();
            rest.intersection_into(g.neighbors(v), head);
            walk(g, head, 2, tmax, &mut counts, tail);
        }
    }
    counts
}

fn walk(g: &Graph, cand: &Bitset, depth: usize, tmax: usize, counts: &mut [u64], scratch: &mut [Bitset]) {
    let c = cand.count() as u64;
    counts[depth] += c;
    if depth == tmax || c == 0 {
        return;
    }
    let (head, tail) = scratch.split_first_mut().unwrap();
    let mut rest = cand.clone();
    for v in cand.iter() {
        rest.remove(v);
        rest.intersection_into(g.neighbors(v), head);
        walk(g, head, depth + 1, tmax, counts, tail);
    }
}

/// Whether `h` occurs in `g` as a (not necessarily induced) subgraph.
pub fn has_subgraph(g: &Graph, h: &Graph) -> bool {
    let (n, k) = (g.order(), h.order());
    if k > n || h.edge_count() > g.edge_count() {
        return false;
    }
    if k == 0 {
        return true;
    }
    // Map h's vertices in order of decreasing degree.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut image = vec![usize::MAX; k];
    let mut used = Bitset::new(n);
    mono(g, h, &order, 0, &mut image, &mut used)
}

fn mono(g: &Graph, h: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: &mut Bitset) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let mut cand = used.complement();
    for &w in &order[..depth] {
        if h.has_edge(u, w) {
            cand.intersect_with(g.neighbors(image[w]));
        }
    }
    for x in cand.iter() {
        if g.degree(x) < h.degree(u) {
            continue;
        }
        image[u] = x;
        used.insert(x);
        if mono(g, h, order, depth + 1, image, used) {
            return true;
        }
        used.remove(x);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(g: &Graph, t: usize) -> u64 {
        let n = g.order();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == t)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                vs.iter()
                    .enumerate()
                    .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
            })
            .count() as u64
    }

    #[test]
    fn k4_triangles() {
        assert_eq!(count_cliques(&Graph::complete(4), 3), 4);
        assert_eq!(count_cliques(&Graph::complete(4), 1), 4);
        assert_eq!(count_cliques(&Graph::complete(4), 5), 0);
        assert_eq!(count_cliques(&Graph::cycle(5), 3), 0);
    }

    #[test]
    fn counts_match_subset_enumeration() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..200 {
            let n = (state % 9) as usize;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
            }
            let upto = count_cliques_upto(&g, n);
            for t in 0..=n {
                assert_eq!(count_cliques(&g, t), naive(&g, t), "{g:?} t={t}");
                assert_eq!(upto[t], naive(&g, t));
            }
        }
    }

    #[test]
    fn subgraph_containment_is_not_induced() {
        let c4 = Graph::cycle(4);
        assert!(has_subgraph(&Graph::complete(4), &c4));
        assert!(has_subgraph(&Graph::complete(4), &Graph::path(3)));
        assert!(!has_subgraph(&Graph::cycle(5), &Graph::complete(3)));
        assert!(has_subgraph(&Graph::empty(3), &Graph::empty(2)));
    }
}
