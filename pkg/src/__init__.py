# fracslice - Python Package
