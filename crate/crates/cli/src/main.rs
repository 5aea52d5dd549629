fn main() {
    println!("qeml");
}
