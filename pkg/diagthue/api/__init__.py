"""The API defines the exact arithmetic, the forms and the checks built on them."""
