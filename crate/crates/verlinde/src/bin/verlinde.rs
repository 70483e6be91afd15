fn main() {
    println!("verlinde CLI: under construction");
}
