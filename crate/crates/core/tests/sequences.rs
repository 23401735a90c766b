use hopspec::seqcore::*;
use proptest::prelude::*;

fn signs(max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { 1i8 } else { -1 }), 1..=max_len)
}

proptest! {
    #[test]
    fn gamma_plus_relations(s in signs(8)) {
        let sigma = 0.7;
        let b = SignWord::new(s, sigma * sigma).unwrap();
        let c = gamma_plus_word(&b, sigma).unwrap().unreduced;
        prop_assert_eq!(c.value(0), sigma);
        for n in -20i64..20 {
            prop_assert_eq!(c.value(2 * n) + c.value(2 * n + 1), 0.0);
            prop_assert_eq!(c.sign_at(2 * n) * c.sign_at(2 * n - 1), b.sign_at(n));
        }
    }

    #[test]
    fn gamma_plus_period_divides_four_n(s in signs(8)) {
        let b = SignWord::new(s, 0.25).unwrap();
        let img = gamma_plus_word(&b, 0.5).unwrap();
        prop_assert_eq!((4 * b.period()) % img.word.period(), 0);
        prop_assert_eq!(img.word.period() * img.reduction, 4 * b.period());
    }

    #[test]
    fn even_image_period_halves_to_a_period_of_b(s in signs(8)) {
        let b = SignWord::new(s, 1.0).unwrap();
        let p = gamma_plus_word(&b, 1.0).unwrap().word.period() as i64;
        if p % 2 == 0 {
            let m = p / 2;
            prop_assert!((-16..16).all(|k| b.sign_at(k) == b.sign_at(k + m)), "b = {}, image period {}", b, p);
        }
    }

    #[test]
    fn window_image_agrees_with_periodic_image(s in signs(6), lo in -6i64..=0, hi in 1i64..6) {
        let sigma = 0.9;
        let b = SignWord::new(s, sigma * sigma).unwrap();
        let cw = gamma_plus_window(&b.window(lo, hi).unwrap(), sigma).unwrap();
        let cp = gamma_plus_word(&b, sigma).unwrap().unreduced;
        prop_assert_eq!((cw.lo(), cw.hi()), (2 * lo - 2, 2 * hi + 1));
        for k in cw.lo()..=cw.hi() {
            prop_assert_eq!(cw.sign(k).unwrap(), cp.sign_at(k));
        }
    }

    #[test]
    fn hat_conjugates_gamma(s in signs(10), lo in -5i64..=0) {
        let hi = lo + s.len() as i64 - 1;
        prop_assume!(hi >= 1);
        let b = SeqWindow::from_signs(lo, s, 0.36).unwrap();
        let left = hat_inversion(&gamma_window(&b, 0.6, Branch::Plus).unwrap());
        let right = gamma_window(&hat_inversion(&b), 0.6, Branch::Minus).unwrap();
        prop_assert_eq!((left.lo(), left.hi()), (right.lo(), right.hi()));
        prop_assert_eq!(left.signs(), right.signs());
    }

    #[test]
    fn iterates_forget_their_seed(a in signs(4), b in signs(4), n in 1u32..=6) {
        let iterate = |s: Vec<i8>| {
            let mut w = SeqWindow::from_signs(0, s, 1.0).unwrap();
            for _ in 0..n {
                w = gamma_plus_window(&w, 1.0).unwrap();
            }
            w
        };
        let (lo, hi) = (2 - (1i64 << n), (1i64 << n) - 1);
        let x = iterate(a).restrict(lo, hi).unwrap();
        let y = iterate(b).restrict(lo, hi).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn canonical_rotation_is_a_rotation(s in signs(12), k in -20i64..20) {
        let w = SignWord::new(s, 0.5).unwrap();
        prop_assert_eq!(w.canonical(), w.rotate(k).canonical());
        prop_assert_eq!(w.sign_product(), w.rotate(k).sign_product());
    }
}

#[test]
fn c_tilde_is_the_fixed_point_on_positive_indices() {
    let n = 12;
    let fp = fixed_point_window(n, 1.0).unwrap();
    let ct = c_tilde_prefix((1 << n) - 1);
    assert_eq!(ct[0], 1);
    for k in 2..(1i64 << n) {
        assert_eq!(fp.sign(k).unwrap(), ct[k as usize - 1], "index {k}");
    }
}

#[test]
fn c_tilde_large_index_is_cheap() {
    let t = std::time::Instant::now();
    let v = c_tilde(1 << 20).unwrap();
    assert!(v == 1 || v == -1);
    assert!(t.elapsed().as_secs_f64() < 2.0);
}

#[test]
fn iterate_words_grow_by_period_doubling() {
    for m in 0..=5 {
        for branch in [Branch::Plus, Branch::Minus] {
            let w = c_iterate_word(m, branch, 0.5).unwrap();
            assert_eq!((1usize << (m + 1)) % w.period(), 0, "m = {m}");
        }
    }
}
