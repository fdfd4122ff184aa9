fn main() {
    // populated once the driver module lands
}
