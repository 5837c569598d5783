fn main() {
    println!("ctop: placeholder");
}
