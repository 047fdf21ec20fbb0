//! Acceptance suite: one test per release gate.  Every equality is
//! bit-exact, every predicted value is checked against an independent
//! brute-force enumeration, and each test prints a single summary line
//! on success (visible with `--nocapture`).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qpart_core::budget::pow_u128;
use qpart_core::codes::{
    binomial_moment, full_code, mrd_field_embedding, mrd_truncated_embedding, pad_code,
    predicted_mrd_rs, predicted_rigid_piv, predicted_rigid_rs, random_code, PadMode,
};
use qpart_core::ferrers::{
    boards_up_to, brute_count, haglund_transform, inv_statistic, q_stirling, rank_dist,
    rank_dist_degree, rank_dist_recursive, rook_poly_closed, rook_poly_enum, rook_poly_recursive,
    stacked_rank_board, stacked_rank_count, FerrersBoard, RookPlacement,
};
use qpart_core::gf::FieldCtx;
use qpart_core::kraw::{
    block_representative, dual_partition, explicit_partition, kraw_rowspace, kraw_table, label_of,
    macwid_matrix, macwilliams_transform, pivot_block_size, CycInt, PartitionKind, PartitionLabel,
};
use qpart_core::lattice::{subspaces, subspaces_with_pivots};
use qpart_core::matgf::{field_from_order, MatGF, PivotList, Subspace};
use qpart_core::preservers::{classify_preservers, extension_search, structured_family};
use qpart_core::Budget;

const ALL_KINDS: [PartitionKind; 4] = [
    PartitionKind::Rank,
    PartitionKind::RowSpace,
    PartitionKind::Pivot,
    PartitionKind::RPivot,
];

/// Master seed for the 100-code random corpus (criterion 3).
const CORPUS_SEED: u64 = 424242;

fn ctx_of(q: u64) -> FieldCtx {
    field_from_order(q).expect("valid prime-power order")
}

/// All matrices of the given shape, indexed by their integer encoding.
fn all_matrices(ctx: &FieldCtx, n: usize, m: usize) -> Vec<MatGF> {
    let total = pow_u128(ctx.q(), (n * m) as u32);
    (0..total).map(|c| MatGF::from_code(ctx, n, m, c)).collect()
}

#[test]
fn criterion_01_krawtchouk_character_oracle() {
    let budget = Budget::DEFAULT;
    for (q, n, m) in [
        (2u64, 2usize, 2usize),
        (2, 3, 2),
        (2, 3, 3),
        (3, 2, 2),
        (3, 3, 2),
        (3, 3, 3),
        (4, 2, 2),
    ] {
        let ctx = ctx_of(q);
        let p = ctx.p();
        let mats = all_matrices(&ctx, n, m);
        // Precomputed additive-character values, one per base-field element.
        let roots: Vec<CycInt> = (0..p).map(|t| CycInt::root_power(p, t)).collect();
        for kind in ALL_KINDS {
            let table = kraw_table(kind, &ctx, n, m, &budget).expect("table within budget");
            let row_of: BTreeMap<&PartitionLabel, usize> = table
                .row_labels
                .iter()
                .enumerate()
                .map(|(j, l)| (l, j))
                .collect();
            let mat_row: Vec<usize> = mats
                .iter()
                .map(|a| row_of[&label_of(kind, a)])
                .collect();
            for (i, col) in table.col_labels.iter().enumerate() {
                let rep = block_representative(col, &ctx, n, m);
                let mut sums: Vec<CycInt> =
                    vec![CycInt::zero(p); table.row_labels.len()];
                for (a, &j) in mats.iter().zip(&mat_row) {
                    let t = ctx.abs_trace(a.trace_product(&rep).expect("same shape"));
                    sums[j].add_assign(&roots[t as usize]);
                }
                for (j, sum) in sums.iter().enumerate() {
                    let val = sum.as_int().unwrap_or_else(|| {
                        panic!(
                            "character sum is not a rational integer \
                             (q={q}, n={n}, m={m}, {kind}, row {j}, col {i})"
                        )
                    });
                    assert_eq!(
                        val, table.values[j][i],
                        "closed form disagrees with character sum \
                         (q={q}, n={n}, m={m}, {kind}, row {j}, col {i})"
                    );
                }
            }
        }
    }
    println!("criterion 01 (krawtchouk character oracle): PASS");
}

#[test]
fn criterion_02_dual_partition_structure() {
    let budget = Budget::DEFAULT;
    let ctx = ctx_of(2);
    for (n, m) in [(2usize, 2usize), (3, 2)] {
        let explicit = |kind| explicit_partition(kind, &ctx, n, m, &budget).expect("in budget");
        let dual = |kind| dual_partition(kind, &ctx, n, m, &budget).expect("in budget");
        assert_eq!(dual(PartitionKind::Rank), explicit(PartitionKind::Rank));
        assert_eq!(
            dual(PartitionKind::RowSpace),
            explicit(PartitionKind::RowSpace)
        );
        assert_eq!(dual(PartitionKind::Pivot), explicit(PartitionKind::RPivot));
        assert_eq!(dual(PartitionKind::RPivot), explicit(PartitionKind::Pivot));
    }
    println!("criterion 02 (dual partition structure): PASS");
}

#[test]
fn criterion_03_macwilliams_end_to_end() {
    let budget = Budget::DEFAULT;
    let ctx = ctx_of(2);
    let (n, m) = (3usize, 2usize);
    let ambient: BigInt = BigInt::from(2).pow((n * m) as u32);
    let subs = subspaces(&ctx, m, &budget).expect("small lattice");
    let (mac_subs, mac_m) = macwid_matrix(&ctx, n, m, &budget).expect("small lattice");
    // The cached table entries are exactly the closed-form coefficients.
    let rs_table =
        kraw_table(PartitionKind::RowSpace, &ctx, n, m, &budget).expect("in budget");
    for (j, vj) in rs_table.row_labels.iter().enumerate() {
        for (i, ui) in rs_table.col_labels.iter().enumerate() {
            if let (PartitionLabel::RowSpace(vv), PartitionLabel::RowSpace(uu)) = (vj, ui) {
                assert_eq!(rs_table.values[j][i], kraw_rowspace(vv, uu, n));
            }
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(CORPUS_SEED);
    for i in 0..100usize {
        let c = random_code(&ctx, n, m, i % 7, &mut rng).expect("dimension fits");
        let dual = c.dual_code();
        let size = c.size();
        let dual_size = dual.size();
        assert_eq!(&size * &dual_size, ambient);

        // Transform vs. direct dual enumeration, all partition pairs.
        for kind in ALL_KINDS {
            let dist = c.distribution(kind, &budget).expect("in budget");
            let transformed = macwilliams_transform(&ctx, n, m, &dist, &size, &budget)
                .expect("exact transform");
            let direct = dual.distribution(kind.dual(), &budget).expect("in budget");
            assert_eq!(transformed, direct, "transform mismatch for {kind}");
        }

        let rs = c
            .distribution(PartitionKind::RowSpace, &budget)
            .expect("in budget");
        let rs_dual = dual
            .distribution(PartitionKind::RowSpace, &budget)
            .expect("in budget");
        let count = |v: &Subspace| rs.get(&PartitionLabel::RowSpace(v.clone()));
        let count_dual = |v: &Subspace| rs_dual.get(&PartitionLabel::RowSpace(v.clone()));

        // Row-space identity, stated with the closed-form coefficients.
        for v in &subs {
            let mut rhs = BigInt::zero();
            for u in &subs {
                rhs += kraw_rowspace(v, u, n) * count(u);
            }
            assert_eq!(count_dual(v) * &size, rhs, "row-space identity at {v}");
        }

        // Shortened-code identity for every subspace.
        for u in &subs {
            let shortened = c.shorten(u, &budget).expect("in budget");
            let dual_shortened = dual.shorten(&u.dual(), &budget).expect("in budget");
            let stretch = BigInt::from(2).pow((n * (m - u.dim())) as u32);
            assert_eq!(
                shortened.size() * stretch,
                &size * dual_shortened.size(),
                "shortened-code identity at {u}"
            );
        }

        // Cumulative identity for every subspace.
        for u in &subs {
            let lhs: BigInt = subs.iter().filter(|v| u.contains(v)).map(count).sum();
            let rhs: BigInt = subs
                .iter()
                .filter(|w| u.dual().contains(w))
                .map(count_dual)
                .sum();
            let stretch = BigInt::from(2).pow((n * (m - u.dim())) as u32);
            assert_eq!(lhs * stretch, &size * rhs, "cumulative identity at {u}");
        }

        // Matrix form of the identity over exact rationals.
        let to_rat = BigRational::from_integer;
        for (j, vj) in mac_subs.iter().enumerate() {
            let mut rhs = BigRational::zero();
            for (i2, ui) in mac_subs.iter().enumerate() {
                rhs += to_rat(count(ui)) * &mac_m[i2][j];
            }
            assert_eq!(to_rat(count_dual(vj) * &size), rhs, "matrix identity at {vj}");
        }

        // Binomial moments for every order, with the boundary anchors.
        for nu in 0..=m {
            let (lhs, rhs) = binomial_moment(&c, nu, &budget).expect("in budget");
            assert_eq!(lhs, rhs, "moment of order {nu}");
            if nu == 0 {
                assert_eq!(lhs, size);
            }
            if nu == m {
                assert_eq!(lhs, BigInt::one());
            }
        }
    }
    println!("criterion 03 (macwilliams end to end, 100-code corpus): PASS");
}

#[test]
fn criterion_04_ferrers_identity_sweep() {
    let budget = Budget::DEFAULT;
    let boards = boards_up_to(5, 5);
    let ctx2 = ctx_of(2);
    let ctx3 = ctx_of(3);
    for board in &boards {
        let cells = board.cell_count();
        let mut prev_deg: Option<i64> = None;
        for r in 0..=6usize {
            let p = rank_dist(board, r);
            assert_eq!(p, rank_dist_recursive(board, r), "recursion at {board} r={r}");
            assert_eq!(
                p.degree(),
                rank_dist_degree(board, r),
                "degree formula at {board} r={r}"
            );
            if r > 0 {
                if let Some(d) = p.degree() {
                    let prev = prev_deg.expect("lower rank count cannot vanish first");
                    assert!(d > prev, "degree monotonicity at {board} r={r}");
                }
            }
            prev_deg = p.degree().or(prev_deg);

            if r <= 5 {
                let rook = rook_poly_enum(board, r, &budget).expect("in budget");
                assert_eq!(
                    rook,
                    rook_poly_closed(board, r).expect("exact division"),
                    "rook closed form at {board} r={r}"
                );
                assert_eq!(
                    rook,
                    rook_poly_recursive(board, r),
                    "rook recursion at {board} r={r}"
                );
                assert_eq!(
                    p,
                    haglund_transform(board, r, &budget).expect("in budget"),
                    "transform identity at {board} r={r}"
                );
                match (p.degree(), rook.trailing_degree()) {
                    (None, None) => {}
                    (Some(d), Some(t)) => {
                        assert_eq!(d, cells as i64 - t, "trailing degree at {board} r={r}")
                    }
                    other => panic!("vanishing mismatch at {board} r={r}: {other:?}"),
                }
            }

            if cells <= 12 {
                let counted = brute_count(board, &ctx2, r, &budget).expect("in budget");
                assert_eq!(p.eval_u64(2).expect("integer"), counted);
            }
            if cells <= 8 {
                let counted = brute_count(board, &ctx3, r, &budget).expect("in budget");
                assert_eq!(p.eval_u64(3).expect("integer"), counted);
            }
        }
    }

    // The displayed three-rook placement and its inversion count.
    let board = FerrersBoard::new(&[1, 2, 4, 4, 5]).expect("monotone");
    let placement = RookPlacement::new(&board, &[(2, 5), (1, 4), (4, 3)]).expect("valid");
    assert_eq!(inv_statistic(&board, &placement), 7);

    println!(
        "criterion 04 (ferrers identity sweep over {} boards): PASS",
        boards.len()
    );
}

#[test]
fn criterion_05_q_stirling_bridge() {
    for m in 0..=5usize {
        let heights: Vec<usize> = (1..=m).collect();
        let triangle = FerrersBoard::new(&heights).expect("monotone");
        for r in 0..=m {
            assert_eq!(
                q_stirling(m + 1, m + 1 - r),
                rook_poly_closed(&triangle, r).expect("exact division"),
                "bridge at m={m} r={r}"
            );
        }
    }
    println!("criterion 05 (q-stirling bridge): PASS");
}

#[test]
fn criterion_06_rigidity_predictions() {
    let budget = Budget::DEFAULT;
    let ctx = ctx_of(2);

    // Field embeddings of orders 4 and 8: the row-space distribution of a
    // maximum-size code is pinned by the parameters alone.
    for m in [2usize, 3] {
        let code = mrd_field_embedding(&ctx, m).expect("irreducible polynomial exists");
        assert!(code.is_mrd(&budget).expect("in budget"));
        let dist = code
            .distribution(PartitionKind::RowSpace, &budget)
            .expect("in budget");
        for v in subspaces(&ctx, m, &budget).expect("small lattice") {
            let predicted = predicted_mrd_rs(v.dim(), m, 2, m);
            assert_eq!(
                dist.get(&PartitionLabel::RowSpace(v.clone())),
                predicted,
                "embedding distribution at m={m}, {v}"
            );
            if v.dim() > 0 && v.dim() < m {
                assert_eq!(predicted, BigInt::zero());
            }
        }
    }
    assert_eq!(predicted_mrd_rs(2, 2, 2, 2), BigInt::from(3));

    // Extremal-but-not-maximum code on a 4x4 space: counts below the
    // covered column block follow the prediction; above it they do not.
    let c1 = mrd_truncated_embedding(&ctx, 4, 2).expect("embedding exists");
    let padded = pad_code(&c1, 2, PadMode::FullPad).expect("shapes agree");
    assert_eq!(padded.dim(), 12);
    let dist = padded
        .distribution(PartitionKind::RowSpace, &budget)
        .expect("in budget");
    let row = |coords: [u64; 4]| {
        MatGF::from_fn(&ctx, 1, 4, |_, j| ctx.elem(coords[j]))
    };
    let t = Subspace::from_span(&row([1, 0, 0, 0]).vstack(&row([0, 1, 0, 0])).expect("shape"));
    for v in subspaces(&ctx, 4, &budget).expect("small lattice") {
        if t.contains(&v) {
            assert_eq!(
                dist.get(&PartitionLabel::RowSpace(v.clone())),
                predicted_rigid_rs(v.dim(), 1, 2, 4),
                "rigid count below the covered block at {v}"
            );
        }
    }
    let v1 = Subspace::from_span(&row([1, 0, 0, 0]).vstack(&row([0, 0, 0, 1])).expect("shape"));
    let v2 = Subspace::from_span(&row([0, 0, 0, 1]).vstack(&row([0, 0, 1, 0])).expect("shape"));
    assert_eq!(dist.get(&PartitionLabel::RowSpace(v1)), BigInt::zero());
    assert_eq!(dist.get(&PartitionLabel::RowSpace(v2)), BigInt::from(210));
    assert_eq!(predicted_rigid_rs(2, 1, 2, 4), BigInt::from(15));

    // Pivot-extremal code on a 3x3 space: counts below the extremality
    // list follow the pivot prediction.
    let c2 = mrd_truncated_embedding(&ctx, 3, 2).expect("embedding exists");
    let padded = pad_code(&c2, 1, PadMode::FullPadFront).expect("shapes agree");
    assert_eq!(padded.size(), BigInt::from(64));
    let pdist = padded
        .distribution(PartitionKind::Pivot, &budget)
        .expect("in budget");
    let lambda = PivotList::new(3, &[2, 3]).expect("increasing");
    let mut checked = 0;
    for mu in PivotList::all(3) {
        if !mu.is_subset(&lambda) {
            continue;
        }
        assert_eq!(
            pdist.get(&PartitionLabel::Pivot(mu.clone())),
            predicted_rigid_piv(&mu, 1, 2, 3),
            "rigid pivot count at {mu}"
        );
        checked += 1;
    }
    assert_eq!(checked, 4);
    assert_eq!(predicted_rigid_piv(&lambda, 1, 2, 3), BigInt::from(7));

    println!("criterion 06 (rigidity predictions): PASS");
}

#[test]
fn criterion_07_stacked_echelon_counts() {
    let ctx = ctx_of(2);
    for m in 0..=4usize {
        for lambda in PivotList::all(m) {
            let echelons = subspaces_with_pivots(&ctx, lambda.clone());
            for sigma in PivotList::all(m) {
                let b = sigma.len();
                let sigma_rows = MatGF::from_fn(&ctx, b, m, |i, j| {
                    if sigma.indices()[i] == j + 1 {
                        ctx.elem(1)
                    } else {
                        ctx.elem(0)
                    }
                });
                for r in 0..=m {
                    let mut actual = BigInt::zero();
                    for u in &echelons {
                        let stacked = u.basis().vstack(&sigma_rows).expect("same width");
                        if stacked.rank() == b + r {
                            actual += BigInt::one();
                        }
                    }
                    assert_eq!(
                        stacked_rank_count(&lambda, &sigma, r, 2).expect("well-formed"),
                        actual,
                        "stacked count at m={m}, lambda={lambda}, sigma={sigma}, r={r}"
                    );
                }
            }
        }
    }

    // Worked residual-board example at width 7.
    let lambda = PivotList::new(7, &[1, 4, 6]).expect("increasing");
    let sigma = PivotList::new(7, &[3, 4, 6]).expect("increasing");
    let board = stacked_rank_board(&lambda, &sigma).expect("same width");
    assert_eq!(board.cols(), &[0, 1, 2]);

    println!("criterion 07 (stacked echelon counts): PASS");
}

#[test]
fn criterion_08_pivot_block_sizes() {
    for q in [2u64, 3] {
        let ctx = ctx_of(q);
        for n in 1..=3usize {
            for m in 1..=3usize {
                let mut counts: BTreeMap<PivotList, BigInt> = BTreeMap::new();
                let total = pow_u128(q, (n * m) as u32);
                for code in 0..total {
                    let a = MatGF::from_code(&ctx, n, m, code);
                    *counts.entry(a.pivots()).or_default() += BigInt::one();
                }
                for mu in PivotList::all(m) {
                    let expected = counts.remove(&mu).unwrap_or_default();
                    assert_eq!(
                        pivot_block_size(&mu, q, n),
                        expected,
                        "block size at q={q}, n={n}, m={m}, mu={mu}"
                    );
                }
                assert!(counts.is_empty(), "unaccounted pivot lists remain");
            }
        }
    }
    println!("criterion 08 (pivot block sizes): PASS");
}

#[test]
fn criterion_09_preserver_classification_and_extension() {
    let budget = Budget::DEFAULT;
    let ctx = ctx_of(2);
    let (n, m) = (2usize, 2usize);

    // Exhaustive classification over all invertible coordinate maps
    // recovers exactly the structured families.
    for (kind, expected) in [(PartitionKind::RowSpace, 6), (PartitionKind::Pivot, 12)] {
        let classified = classify_preservers(&ctx, n, m, kind, &budget).expect("in budget");
        assert_eq!(classified.len(), expected, "{kind} preserver count");
        let classified_codes: BTreeSet<u128> =
            classified.iter().map(|g| g.code()).collect();
        let family_codes: BTreeSet<u128> = structured_family(&ctx, n, m, kind, &budget)
            .expect("in budget")
            .iter()
            .map(|b| {
                qpart_core::preservers::GeneralLinearMap::from_bilinear(n, m, b)
                    .expect("invertible")
                    .code()
            })
            .collect();
        assert_eq!(classified_codes, family_codes, "{kind} family equality");
    }

    // A rank isometry of the zero-padded full code with no structured
    // extension: transpose the live block in place.
    let c = pad_code(&full_code(&ctx, 2, 2), 1, PadMode::ZeroPad).expect("shapes agree");
    let family = structured_family(&ctx, 2, 3, PartitionKind::Rank, &budget).expect("in budget");
    assert_eq!(family.len(), 1008);
    let zeros = MatGF::zeros(&ctx, 2, 1);
    let f = |a: &MatGF| a.select_cols(&[0, 1]).transpose().hconcat(&zeros);
    let found =
        extension_search(&c, f, PartitionKind::Rank, &budget).expect("in budget");
    assert!(found.is_none(), "no structured rank extension exists");

    // A pivot isometry of the order-8 field embedding with no structured
    // extension: plain transposition.
    let c = mrd_field_embedding(&ctx, 3).expect("embedding exists");
    let family = structured_family(&ctx, 3, 3, PartitionKind::Pivot, &budget).expect("in budget");
    assert_eq!(family.len(), 1344);
    let f = |a: &MatGF| Ok(a.transpose());
    let found =
        extension_search(&c, f, PartitionKind::Pivot, &budget).expect("in budget");
    assert!(found.is_none(), "no structured pivot extension exists");

    println!("criterion 09 (preserver classification and extension): PASS");
}
