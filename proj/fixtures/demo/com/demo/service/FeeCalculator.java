package com.demo.service;

import com.demo.model.Genre;
import com.demo.model.Loan;
import com.demo.model.Member;
import com.demo.util.Money;
import java.time.LocalDate;

public class FeeCalculator {
    private static final double DAILY = 0.25;
    private static final double CAP = 15.0;

    public Money fee(Loan loan, LocalDate today) {
        long days = loan.overdueDays(today);
        if (days <= 0) {
            return Money.ZERO;
        }
        double rate = DAILY;
        Genre g = loan.getBook().getGenre();
        switch (g) {
            case CHILDREN:
                rate = DAILY / 2;
                break;
            case SCIENCE:
            case HISTORY:
                rate = DAILY * 1.5;
                break;
            default:
                break;
        }
        double amount = days * rate;
        Member m = loan.getMember();
        if (m.getTier() == Member.Tier.GOLD && days < 3) {
            amount = 0;
        } else if (m.getTier() == Member.Tier.SILVER) {
            amount *= 0.8;
        }
        return Money.of(Math.min(amount, CAP));
    }

    public static double rateFor(Genre g) {
        return g == Genre.CHILDREN ? DAILY / 2 : DAILY;
    }
}
