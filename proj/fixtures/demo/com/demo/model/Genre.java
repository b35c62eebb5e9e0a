package com.demo.model;

public enum Genre {
    FICTION("F", 14),
    SCIENCE("S", 21),
    HISTORY("H", 21),
    CHILDREN("C", 7) {
        @Override
        public boolean restricted() {
            return false;
        }
    };

    private final String code;
    private final int loanDays;

    Genre(String code, int loanDays) {
        this.code = code;
        this.loanDays = loanDays;
    }

    public String code() {
        return code;
    }

    public int loanDays() {
        return loanDays;
    }

    public boolean restricted() {
        return loanDays > 14;
    }

    public static Genre fromCode(String code) {
        for (Genre g : values()) {
            if (g.code.equalsIgnoreCase(code)) {
                return g;
            }
        }
        throw new IllegalArgumentException("unknown genre " + code);
    }
}
