"""Exact verification engine for contact forms, contact p-spheres and their Reeb fields."""
