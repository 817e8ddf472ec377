pub struct Placeholdercli;
