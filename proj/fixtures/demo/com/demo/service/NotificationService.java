package com.demo.service;

import com.demo.model.Loan;
import com.demo.model.Member;
import java.time.LocalDate;
import java.util.ArrayList;
import java.util.List;

public class NotificationService {
    private final List<Notifier> channels = new ArrayList<>();
    private int failures;

    public void register(Notifier n) {
        channels.add(n);
    }

    public int notifyAll(Member m, String message) {
        int delivered = 0;
        for (Notifier n : channels) {
            try {
                if (n.send(m, message)) {
                    delivered++;
                } else {
                    failures++;
                }
            } catch (RuntimeException e) {
                failures++;
            }
        }
        return delivered;
    }

    public int remindOverdue(List<Loan> loans, LocalDate today) {
        int reminded = 0;
        for (Loan l : loans) {
            long days = l.overdueDays(today);
            if (days == 0) continue;
            String text = days > 7 ? "Final notice: " : "Reminder: ";
            text += l.getBook().getTitle() + " is " + days + " days overdue";
            reminded += notifyAll(l.getMember(), text) > 0 ? 1 : 0;
        }
        return reminded;
    }

    public int getFailures() {
        return failures;
    }
}
