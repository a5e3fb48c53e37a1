use galdual::fft::fft3;
use galdual::grid::Grid3;
use num_complex::Complex64;
use std::time::Instant;

fn main() {
    for n in [64usize, 128] {
        let grid = Grid3::<f64>::cubic(n, 0.4);
        let mut data: Vec<Complex64> = (0..grid.len())
            .map(|i| Complex64::new((i as f64 * 0.001).sin(), 0.0))
            .collect();
        let t0 = Instant::now();
        let reps = if n == 64 { 10 } else { 4 };
        for _ in 0..reps {
            fft3(&mut data, grid.n, false);
            fft3(&mut data, grid.n, true);
        }
        let dt = t0.elapsed().as_secs_f64() / (2 * reps) as f64;
        println!("fft3({n}^3): {:.1} ms", dt * 1e3);
    }
}
