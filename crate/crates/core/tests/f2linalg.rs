use ftqc::f2linalg::{
    combinations, hamming_7_4, reed_muller, repetition, steane_classical, syndrome, BinaryMatrix, BitVector,
    DecodeTable, LinearCode,
};

fn all_vectors(n: usize) -> impl Iterator<Item = BitVector> {
    (0..1u64 << n).map(move |v| BitVector::from_u64(n, v))
}

/// Codewords by brute force over all of F2^n, independent of the generator.
fn brute_codewords(code: &LinearCode) -> Vec<BitVector> {
    all_vectors(code.n()).filter(|v| code.contains(v)).collect()
}

#[test]
fn syndromes_of_hamming_code() {
    let code = hamming_7_4();
    let h = code.parity_check();
    let words = code.codewords().unwrap();
    assert_eq!(words.len(), 16);
    for c in &words {
        assert!(syndrome(h, c).unwrap().is_zero());
        for pos in 0..7 {
            let y = c.sum(&BitVector::unit(7, pos));
            assert_eq!(syndrome(h, &y).unwrap(), h.column(pos));
        }
    }
}

#[test]
fn duals() {
    let even = repetition(3).dual();
    assert_eq!(even.k(), 2);
    assert_eq!(brute_codewords(&even), all_vectors(3).filter(|v| v.weight() % 2 == 0).collect::<Vec<_>>());

    let rm = reed_muller(1, 3).unwrap();
    let g = rm.generator();
    assert!(g.mul_transpose(g).unwrap().is_zero());
    assert_eq!(rm.dual(), rm);

    let full = LinearCode::from_generator(BinaryMatrix::identity(5)).unwrap();
    assert_eq!(full.dual().k(), 0);

    for code in [hamming_7_4(), reed_muller(2, 5).unwrap(), repetition(6)] {
        assert_eq!(code.dual().dual(), code);
    }
}

#[test]
fn distances_by_enumeration() {
    for (code, d) in [(repetition(3), 3), (hamming_7_4(), 3), (reed_muller(1, 3).unwrap(), 4)] {
        let brute = brute_codewords(&code)
            .iter()
            .map(BitVector::weight)
            .filter(|&w| w > 0)
            .min()
            .unwrap();
        assert_eq!(brute, d);
        assert_eq!(code.min_distance().unwrap(), d);
    }
    let weights = reed_muller(1, 3).unwrap().weight_distribution().unwrap().to_vec();
    assert_eq!(weights, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
}

#[test]
fn classification() {
    let rm = reed_muller(1, 3).unwrap().classify().unwrap();
    assert!(rm.contains_dual && rm.self_dual && rm.doubly_even);

    let ham = hamming_7_4().classify().unwrap();
    assert!(ham.contains_dual && !ham.self_dual);
    // The dual is the even-weight subcode.
    let dual = hamming_7_4().dual();
    assert!(dual.codewords().unwrap().iter().all(|w| w.weight() % 2 == 0));
    assert_eq!(dual.min_distance().unwrap(), 4);

    let rep2 = repetition(2).classify().unwrap();
    assert!(rep2.self_dual && !rep2.doubly_even);

    for r in [1, 2] {
        assert!(reed_muller(r, 2 * r + 1).unwrap().classify().unwrap().self_dual);
    }
}

#[test]
fn reed_muller_parameters() {
    let rm13 = reed_muller(1, 3).unwrap();
    assert_eq!((rm13.n(), rm13.k(), rm13.min_distance().unwrap()), (8, 4, 4));
    let rm03 = reed_muller(0, 3).unwrap();
    assert_eq!(rm03, repetition(8));
    assert_eq!(rm03.min_distance().unwrap(), 8);
    let rm25 = reed_muller(2, 5).unwrap();
    assert_eq!((rm25.n(), rm25.k()), (32, 16));
    assert_eq!(rm25.min_distance().unwrap(), 8);
    assert!(rm25.classify().unwrap().self_dual);
}

#[test]
fn puncturing() {
    let rm = reed_muller(1, 3).unwrap();
    let punctured = rm.puncture(7).unwrap();
    assert_eq!((punctured.n(), punctured.k(), punctured.min_distance().unwrap()), (7, 4, 3));
    assert_eq!(punctured, steane_classical());
    let class = punctured.classify().unwrap();
    assert!(class.contains_dual && !class.self_dual);

    assert_eq!(repetition(3).puncture(0).unwrap(), repetition(2));

    let rm25 = reed_muller(2, 5).unwrap().puncture(31).unwrap();
    assert_eq!((rm25.n(), rm25.k()), (31, 16));
    assert!(rm25.min_distance().unwrap() >= 7);

    // A self-dual code loses at most one unit of distance to puncturing.
    for coord in 0..8 {
        let d = rm.puncture(coord).unwrap().min_distance().unwrap();
        assert!(d == 3 || d == 4);
    }
    assert!(rm.puncture(8).is_err());
}

#[test]
fn decode_tables() {
    let code = hamming_7_4();
    let table = DecodeTable::build(&code, 1).unwrap();
    assert_eq!(table.len(), 8);
    let zero = BitVector::zeros(3);
    assert!(table.decode(&zero).unwrap().is_zero());

    // Every weight <= 1 error on every codeword is recovered exactly.
    for c in code.codewords().unwrap() {
        for e in std::iter::once(BitVector::zeros(7)).chain((0..7).map(|i| BitVector::unit(7, i))) {
            let s = syndrome(code.parity_check(), &c.sum(&e)).unwrap();
            assert_eq!(table.decode(&s).unwrap(), e);
        }
    }

    let rep = repetition(3);
    let table = DecodeTable::build(&rep, 1).unwrap();
    for (i, e) in (0..3).map(|i| (i, BitVector::unit(3, i))) {
        let s = syndrome(rep.parity_check(), &e).unwrap();
        assert_eq!(table.decode(&s).unwrap().ones_positions(), vec![i]);
    }
    assert!(DecodeTable::build(&code, 2).is_err());
}

#[test]
fn tie_break_prefers_lexicographically_first_error() {
    // Length-4 code with d = 2: every single error is ambiguous against another.
    let code = LinearCode::from_generator(BinaryMatrix::from_strs(4, &["1100", "0011"]).unwrap()).unwrap();
    assert!(DecodeTable::build(&code, 1).is_err());
    // Within a valid table, each syndrome maps to the first minimal-weight error.
    let rm = reed_muller(1, 3).unwrap().puncture(7).unwrap();
    let table = DecodeTable::build(&rm, 1).unwrap();
    for (s, e) in table.entries() {
        let first = std::iter::once(BitVector::zeros(7))
            .chain(combinations(7, 1).into_iter().map(|c| BitVector::unit(7, c[0])))
            .find(|cand| &syndrome(rm.parity_check(), cand).unwrap() == s)
            .unwrap();
        assert_eq!(&first, e);
    }
}
