# Makes the commands directory a package; every public module here exposes setup(app).
