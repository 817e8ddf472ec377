pub struct Placeholderideal_file;
