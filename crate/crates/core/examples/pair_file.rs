//! Writes a pair in the hex-float matrix format, reads it back bit-exactly,
//! and runs the command line front end on it.

use uncert_frames::cli::{main_from_args, matrix_file};
use uncert_frames::random_biorthogonal_pair;

fn main() -> uncert_frames::Result<()> {
    let pair = random_biorthogonal_pair(3, 4, 42, 1e6)?;
    let text = matrix_file::write_pair(&pair);
    println!("{text}");
    assert_eq!(matrix_file::read_pair(&text)?, pair);

    let path = std::env::temp_dir().join("uncert-frames-example-pair.csv");
    std::fs::write(&path, &text)?;
    let spec = format!("file:{}", path.display());
    let args = [
        "uncert-frames", "--format", "human", "verify", "--theorem", "discup", "--pair-f", &spec,
        "--pair-g", "dft:3", "--x", "spike:3:0", "--p", "0.5",
    ];
    let code = main_from_args(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
    std::fs::remove_file(&path)?;
    Ok(())
}
