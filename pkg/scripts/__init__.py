"""Scripts package."""