//! Sort-with-sign: the single place where anticommutation signs are computed.
//!
//! Every graded product in the crate (Grassmann generators, θ coordinates,
//! odd jets) funnels through [`sort_with_sign`].

/// Sort `items` in place into canonical (ascending) order and return the sign
/// picked up from exchanging odd items, or `None` when an odd item repeats
/// (nilpotency).
///
/// Even items commute with everything; only transpositions of two odd items
/// contribute a factor −1.
pub fn sort_with_sign<T: Ord>(items: &mut [T], is_odd: impl Fn(&T) -> bool) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort; products are short
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            if is_odd(&items[j - 1]) && is_odd(&items[j]) {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in items.windows(2) {
        if w[0] == w[1] && is_odd(&w[0]) {
            return None;
        }
    }
    Some(sign)
}

/// Sign of reversing a word with `odd` odd letters: (−1)^{k(k−1)/2}.
pub fn reversal_sign(odd: usize) -> i8 {
    if (odd * odd.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_is_negative() {
        let mut v = [2u32, 1];
        assert_eq!(sort_with_sign(&mut v, |_| true), Some(-1));
        assert_eq!(v, [1, 2]);
    }

    #[test]
    fn repeated_odd_vanishes() {
        let mut v = [3u32, 1, 3];
        assert_eq!(sort_with_sign(&mut v, |_| true), None);
    }

    #[test]
    fn even_items_commute() {
        let mut v = [(3u32, false), (1, true), (2, true)];
        assert_eq!(sort_with_sign(&mut v, |x| x.1), Some(1));
        let mut w = [(2u32, true), (1, true), (1, false)];
        // (2,o)(1,o)(1,e): odd pair swapped once
        assert_eq!(sort_with_sign(&mut w, |x| x.1), Some(-1));
    }

    #[test]
    fn reversal_matches_bubble_count() {
        for k in 0..8usize {
            let mut v: Vec<usize> = (0..k).rev().collect();
            assert_eq!(sort_with_sign(&mut v, |_| true), Some(reversal_sign(k)));
        }
    }
}
