fn main() {
    todo!("cli wiring");
}
