pub struct Placeholderci;
