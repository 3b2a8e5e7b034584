// scratch: order of the A-block indicator vs the all-ones vector
use tilek::adjacency::{build_pair, SystemKind};
use tilek::graph::BipartiteGraph;
use tilek::linalg::{block_right, element_order_in_cokernel, IntMatrix};
use num_bigint::BigInt;

fn main() {
    for (a, bta) in [(4u32, 4u32), (4, 6), (5, 5), (6, 6), (6, 8), (5, 9)] {
        let g = BipartiteGraph::complete(a, bta).unwrap();
        let (m1, m2) = build_pair(&g, SystemKind::PointedTile).unwrap();
        let n = m1.dim();
        let part = |m: &tilek::adjacency::AdjacencyMatrix, t: bool| IntMatrix::from_fn(n, n, |i, j| {
            BigInt::from(i64::from(i == j) - i64::from(if t { m.entry(j, i) } else { m.entry(i, j) }))
        });
        let b = block_right(&part(&m1, true), &part(&m2, true));
        // quartered order: first quarter of the index is the A-block
        let quarter = n / 4;
        let a_indicator: Vec<BigInt> = (0..n).map(|i| BigInt::from((i < quarter) as i64)).collect();
        let ones: Vec<BigInt> = (0..n).map(|_| BigInt::from(1)).collect();
        let oa = element_order_in_cokernel(&b, &a_indicator);
        let o1 = element_order_in_cokernel(&b, &ones);
        let gg = num_integer::gcd(a as i64 - 2, bta as i64 - 2);
        println!("kappa({a},{bta}) gcd={gg}: order(sum A-forms)={oa} order(all-ones)={o1}");
    }
}
