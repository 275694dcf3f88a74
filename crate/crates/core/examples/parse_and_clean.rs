//! Parsing a track CSV and cleaning it.
//!
//! The track below has a lost sample (empty coordinates), a one-sample spike
//! and a blink at the end. Preprocessing drops the spike, interpolates the
//! gaps and trims the trailing missing samples.
//!
//! Run with `cargo run --example parse_and_clean`.

use gazetopo::gaze::{parse_track, preprocess, write_track};

const TRACK: &str = "\
n,x,y,label
0,1.0,2.0,0
2,1.1,2.0,0
4,,,0
6,1.3,2.1,0
8,48.0,2.1,0
10,1.5,2.2,0
12,4.0,3.0,1
14,7.0,4.0,1
16,,,2
";

fn main() {
    let raw = parse_track("demo", TRACK).expect("valid track");
    println!("parsed {} samples, complete: {}", raw.len(), raw.is_complete());

    let clean = preprocess(&raw, 30.0).expect("enough valid samples");
    println!("after preprocessing: {} samples, complete: {}", clean.len(), clean.is_complete());
    print!("{}", write_track(&clean));
}
