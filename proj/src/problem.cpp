// implemented later
