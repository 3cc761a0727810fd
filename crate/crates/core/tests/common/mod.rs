#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use twb_core::{BraidWord, Category, Event, Generator, MorseDiagram, Orientation};

#[derive(Clone, Copy, PartialEq)]
enum Dir {
    Up,
    Down,
}

/// A random closed diagram with exactly the requested numbers of classical
/// crossings, virtual crossings and bars.
pub fn random_diagram(rng: &mut impl Rng, category: Category, classical: usize, virtuals: usize, bars: usize) -> MorseDiagram {
    let max_width = 6;
    let mut dirs: Vec<Dir> = Vec::new();
    let mut events = Vec::new();
    let (mut c, mut v, mut b) = (classical, virtuals, bars);
    loop {
        let width = dirs.len();
        let caps: Vec<usize> = (0..width.saturating_sub(1)).filter(|&i| dirs[i] != dirs[i + 1]).collect();
        let mut options = Vec::new();
        if width + 2 <= max_width && (width == 0 || c + v + b > 0) {
            options.push(0);
        }
        if !caps.is_empty() && (c + v + b == 0 || width > 2) {
            options.push(1);
        }
        if width >= 2 && c + v > 0 {
            options.extend([2, 2]);
        }
        if width >= 1 && b > 0 {
            options.push(3);
        }
        if width == 0 && c + v + b == 0 && !events.is_empty() {
            break;
        }
        match *options.choose(rng).unwrap() {
            0 => {
                let p = rng.gen_range(0..=width);
                let ccw = rng.gen_bool(0.5);
                let pair = if ccw { [Dir::Down, Dir::Up] } else { [Dir::Up, Dir::Down] };
                dirs.splice(p..p, pair);
                events.push(Event::Cup(p + 1, if ccw { Orientation::Ccw } else { Orientation::Cw }));
            }
            1 => {
                let p = *caps.choose(rng).unwrap();
                let ccw = dirs[p] == Dir::Down;
                dirs.drain(p..p + 2);
                events.push(Event::Cap(p + 1, if ccw { Orientation::Ccw } else { Orientation::Cw }));
            }
            2 => {
                let p = rng.gen_range(0..width - 1);
                dirs.swap(p, p + 1);
                let classical_next = v == 0 || (c > 0 && rng.gen_range(0..c + v) < c);
                if classical_next {
                    c -= 1;
                    let pos = category.is_flat() || rng.gen_bool(0.5);
                    events.push(if pos { Event::CrossPos(p + 1) } else { Event::CrossNeg(p + 1) });
                } else {
                    v -= 1;
                    events.push(Event::CrossVirtual(p + 1));
                }
            }
            _ => {
                b -= 1;
                events.push(Event::Bar(rng.gen_range(1..=width)));
            }
        }
    }
    let d = MorseDiagram::new(category, events);
    d.validate().expect("generated diagram is valid");
    d
}

/// A freely reduced random word on at most `max_n` strands.
pub fn random_word(rng: &mut impl Rng, category: Category, max_n: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(1..=max_n);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .filter_map(|_| {
            let k = rng.gen_range(0..4);
            if k == 3 {
                return Some(Generator::b(rng.gen_range(1..=n)));
            }
            if n < 2 {
                return None;
            }
            let i = rng.gen_range(1..n);
            Some(match (k, category.is_flat()) {
                (0, _) => Generator::v(i),
                (_, true) => Generator::c(i),
                (1, false) => Generator::sigma(i),
                _ => Generator::sigma_inv(i),
            })
        })
        .collect();
    BraidWord::new(n, category, letters).unwrap().free_reduce()
}
